#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cfafl/harness/config.hpp"
#include "cfafl/harness/experiment.hpp"
#include "cfafl/harness/idx.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAbort = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cfafl::harness::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_summary(const cfafl::harness::MetricsTable& table, const std::string& out) {
  const auto totals = table.totals();
  auto rate = [](const std::optional<double>& r) {
    std::ostringstream s;
    if (r) {
      s << *r << "%";
    } else {
      s << "NA";
    }
    return s.str();
  };
  std::cout << "rounds: " << table.rounds.size() << "\n"
            << "verification: " << rate(totals.verification_rate) << "\n"
            << "authentication: " << rate(totals.authentication_rate) << "\n"
            << "non-repudiation incidents: " << totals.non_repudiation_incidents << "\n"
            << "final accuracy: " << table.final_accuracy() << "\n";
  if (!out.empty()) std::cout << "csv: " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated learning simulator with signed, attested client updates"};

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        name, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
  };

  app.add_option("--config", config_path, "Config file (key = value lines)");
  flag("--rounds", "rounds", "Number of federated rounds");
  flag("--clients", "clients", "Number of honest clients");
  app.add_option_function<std::string>(
         "--security", [&](const std::string& v) { overrides.emplace_back("security", v); },
         "Enforce server verification")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option_function<std::string>(
         "--encrypt", [&](const std::string& v) { overrides.emplace_back("encrypt", v); },
         "Encrypt update payloads")
      ->check(CLI::IsMember({"on", "off"}));
  flag("--attack", "attack.kind", "none, model-poison, data-poison, tamper, sybil or replay");
  flag("--attack-fraction", "attack.fraction", "Share of clients the adversary controls");
  flag("--attack-strength", "attack.strength", "Attack strength (poison scale or label-flip share)");
  flag("--seed", "seed", "Base seed");
  flag("--out", "out", "CSV output path");
  app.add_option_function<std::string>(
         "--dataset", [&](const std::string& v) { overrides.emplace_back("data.source", v); },
         "Dataset source")
      ->check(CLI::IsMember({"synthetic", "idx"}));
  flag("--idx-images", "data.idx_images", "IDX image file");
  flag("--idx-labels", "data.idx_labels", "IDX label file");
  flag("--subset", "data.subset", "Number of IDX examples to draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  cfafl::harness::ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? cfafl::harness::ExperimentConfig{}
                              : cfafl::harness::parse_config(read_text(config_path));
    for (const auto& [key, value] : overrides) cfafl::harness::set_config_value(cfg, key, value);
    cfg.validate();
  } catch (const cfafl::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const auto table = cfafl::harness::run_experiment(cfg);
    print_summary(table, cfg.out);
  } catch (const cfafl::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cfafl::harness::IdxError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cfafl::harness::ExperimentAborted& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    if (!e.partial().rounds.empty() && !cfg.out.empty()) std::cerr << "partial csv: " << cfg.out << "\n";
    return kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitAbort;
  }
  return kExitOk;
}
