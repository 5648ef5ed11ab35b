#pragma once

#include <stdexcept>
#include <string>

#include "cfafl/harness/metrics.hpp"

namespace cfafl::harness {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "round,client_count,verification_rate,authentication_rate,non_repudiation_incidents,accuracy,duration_ms";

struct CsvOptions {
  /// Off: every duration is written as 0.
  bool timing = true;
  /// Marks the summary row "aborted" instead of "all".
  bool aborted = false;
};

/// Header, one row per round, then a summary row with pooled rates, total
/// incidents, final accuracy and total duration. Rates and accuracy use six
/// decimals, undefined rates are written as NA. Throws CsvError for an empty table.
std::string format_csv(const MetricsTable& table, CsvOptions options = {});

/// Writes format_csv to `path`. Throws CsvError when the file cannot be written.
void emit_csv(const MetricsTable& table, const std::string& path, CsvOptions options = {});

}  // namespace cfafl::harness
