#include "cfafl/harness/csv.hpp"

#include <cstdio>
#include <fstream>

namespace cfafl::harness {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string rate(const std::optional<double>& r) { return r ? fixed(*r, 6) : std::string("NA"); }

std::string row(const std::string& label, std::size_t clients, const RoundMetrics& m, double accuracy,
                double duration_ms, bool timing) {
  return label + "," + std::to_string(clients) + "," + rate(m.verification_rate) + "," +
         rate(m.authentication_rate) + "," + std::to_string(m.non_repudiation_incidents) + "," +
         fixed(accuracy, 6) + "," + fixed(timing ? duration_ms : 0.0, 3) + "\n";
}

}  // namespace

std::string format_csv(const MetricsTable& table, CsvOptions options) {
  if (table.rounds.empty()) throw CsvError("cannot emit a CSV for an empty metrics table");
  std::string out = std::string(kCsvHeader) + "\n";
  for (const RoundReport& r : table.rounds) {
    out += row(std::to_string(r.round), r.client_count, r.metrics, r.accuracy, r.duration_ms, options.timing);
  }
  out += row(options.aborted ? "aborted" : "all", table.rounds.back().client_count, table.totals(),
             table.final_accuracy(), table.total_duration_ms(), options.timing);
  return out;
}

void emit_csv(const MetricsTable& table, const std::string& path, CsvOptions options) {
  const std::string text = format_csv(table, options);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CsvError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw CsvError("failed writing '" + path + "'");
}

}  // namespace cfafl::harness
