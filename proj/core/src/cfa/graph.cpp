#include "cfafl/cfa/graph.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cfafl::cfa {

ControlFlowGraph::ControlFlowGraph(std::set<Label> nodes, std::set<Edge> edges, Label start, Label end)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), start_(start), end_(end) {
  if (!nodes_.contains(start_) || !nodes_.contains(end_)) {
    throw std::invalid_argument("start and end labels must be graph nodes");
  }
  for (const auto& [from, to] : edges_) {
    if (!nodes_.contains(from) || !nodes_.contains(to)) {
      throw std::invalid_argument(std::string("edge ") + std::string(to_string(from)) + "->" +
                                  std::string(to_string(to)) + " references a missing node");
    }
  }
  std::set<Label> seen{start_};
  std::deque<Label> frontier{start_};
  while (!frontier.empty()) {
    const Label at = frontier.front();
    frontier.pop_front();
    for (const auto& [from, to] : edges_) {
      if (from == at && seen.insert(to).second) frontier.push_back(to);
    }
  }
  if (!seen.contains(end_)) throw std::invalid_argument("end label is unreachable from start");
}

namespace {
ControlFlowGraph linear(std::vector<Label> path, std::set<ControlFlowGraph::Edge> extra = {}) {
  std::set<Label> nodes(path.begin(), path.end());
  std::set<ControlFlowGraph::Edge> edges = std::move(extra);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.insert({path[i], path[i + 1]});
  return ControlFlowGraph(std::move(nodes), std::move(edges), path.front(), path.back());
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    std::string item = trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Label require_label(const std::string& name, std::size_t line) {
  auto label = parse_label(name);
  if (!label) throw std::invalid_argument("line " + std::to_string(line) + ": unknown label '" + name + "'");
  return *label;
}
}  // namespace

ControlFlowGraph ControlFlowGraph::default_client() {
  return linear({Label::RoundStart, Label::TrainBegin, Label::TrainEnd, Label::UpdateHashed, Label::UpdateSigned,
                 Label::UpdateSent, Label::RoundEnd});
}

ControlFlowGraph ControlFlowGraph::default_server() {
  return linear({Label::RoundStart, Label::ServerReceived, Label::ServerVerified, Label::Aggregated,
                 Label::GlobalApplied, Label::RoundEnd},
                {{Label::ServerReceived, Label::ServerReceived}});
}

ControlFlowGraph ControlFlowGraph::parse(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key != "nodes" && key != "edges" && key != "start" && key != "end") {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (fields.contains(key)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    fields[key] = {trim(std::string_view(line).substr(eq + 1)), line_no};
  }
  for (const char* required : {"nodes", "edges", "start", "end"}) {
    if (!fields.contains(required)) throw std::invalid_argument(std::string("missing key '") + required + "'");
  }

  std::set<Label> nodes;
  for (const auto& name : split_list(fields["nodes"].first)) nodes.insert(require_label(name, fields["nodes"].second));
  std::set<Edge> edges;
  for (const auto& item : split_list(fields["edges"].first)) {
    const auto arrow = item.find("->");
    if (arrow == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(fields["edges"].second) + ": edge '" + item +
                                  "' is not FROM->TO");
    }
    edges.insert({require_label(trim(std::string_view(item).substr(0, arrow)), fields["edges"].second),
                  require_label(trim(std::string_view(item).substr(arrow + 2)), fields["edges"].second)});
  }
  return ControlFlowGraph(std::move(nodes), std::move(edges), require_label(fields["start"].first, fields["start"].second),
                          require_label(fields["end"].first, fields["end"].second));
}

std::string ControlFlowGraph::to_text() const {
  std::ostringstream out;
  out << "nodes = ";
  bool first = true;
  for (Label n : nodes_) {
    out << (first ? "" : ", ") << to_string(n);
    first = false;
  }
  out << "\nedges = ";
  first = true;
  for (const auto& [from, to] : edges_) {
    out << (first ? "" : ", ") << to_string(from) << "->" << to_string(to);
    first = false;
  }
  out << "\nstart = " << to_string(start_) << "\nend = " << to_string(end_) << "\n";
  return out.str();
}

int cfa_check(const ControlFlowGraph& graph, std::optional<Label> prev, Label current) {
  if (!prev) return current == graph.start() ? 1 : 0;
  return graph.has_edge(*prev, current) ? 1 : 0;
}

}  // namespace cfafl::cfa
