#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfafl/cfa/checkpoint.hpp"

namespace cfafl::cfa {

/// Expected control flow: legal checkpoint transitions plus start and end labels.
class ControlFlowGraph {
 public:
  using Edge = std::pair<Label, Label>;

  /// Throws std::invalid_argument when an edge endpoint or start/end is not a
  /// node, or when `end` is unreachable from `start`.
  ControlFlowGraph(std::set<Label> nodes, std::set<Edge> edges, Label start, Label end);

  /// ROUND_START -> TRAIN_BEGIN -> TRAIN_END -> UPDATE_HASHED -> UPDATE_SIGNED
  /// -> UPDATE_SENT -> ROUND_END
  static ControlFlowGraph default_client();
  /// ROUND_START -> SERVER_RECEIVED (self-loop) -> SERVER_VERIFIED -> AGGREGATED
  /// -> GLOBAL_APPLIED -> ROUND_END
  static ControlFlowGraph default_server();

  /// Parses the key=value graph format:
  ///
  ///   nodes = ROUND_START, TRAIN_BEGIN, ...
  ///   edges = ROUND_START->TRAIN_BEGIN, ...
  ///   start = ROUND_START
  ///   end   = ROUND_END
  ///
  /// Blank lines and lines starting with '#' are ignored.
  static ControlFlowGraph parse(std::string_view text);
  std::string to_text() const;

  const std::set<Label>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  Label start() const { return start_; }
  Label end() const { return end_; }
  bool has_edge(Label from, Label to) const { return edges_.contains({from, to}); }

  bool operator==(const ControlFlowGraph&) const = default;

 private:
  std::set<Label> nodes_;
  std::set<Edge> edges_;
  Label start_;
  Label end_;
};

/// The point predicate: 1 when (no previous point and current is the start)
/// or prev -> current is an expected edge, 0 otherwise. Total and pure.
int cfa_check(const ControlFlowGraph& graph, std::optional<Label> prev, Label current);

}  // namespace cfafl::cfa
