#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "esqkd/adversary.hpp"
#include "esqkd/error.hpp"
#include "esqkd/protocols.hpp"
#include "harness/campaign.hpp"
#include "harness/tables.hpp"
#include "harness/verify.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAlarm = 2;

struct RunFlags {
  std::string protocol = "two_party_es";
  unsigned parties = 0;
  std::uint64_t rounds = 10000;
  std::uint64_t seed = 1;
  std::string eve = "none";
  std::string eve_policy = "forward_captured";
  std::string eve_ancilla = "00";
  std::vector<std::string> eve_targets;
  double compare_fraction = 1.0;
  bool announce_basis = false;
  std::vector<std::string> pair_labels;
  std::string ghz_label;
  unsigned threads = 0;
};

esqkd::ProtocolConfig to_config(const RunFlags& flags) {
  using namespace esqkd;
  ProtocolConfig config;
  config.protocol = parse_protocol(flags.protocol);
  config.num_parties = flags.parties;
  if (config.num_parties == 0) {
    config.num_parties = config.protocol == ProtocolKind::two_party_es ? 2 : 3;
  }
  config.rounds = flags.rounds;
  config.seed = flags.seed;
  if (flags.eve == "intercept") {
    config.eve.kind = config.protocol == ProtocolKind::two_party_es
                          ? EveKind::two_party_intercept
                          : EveKind::multiparty_intercept;
  } else {
    config.eve.kind = parse_eve_kind(flags.eve);
  }
  if (config.eve.kind == EveKind::two_party_intercept && config.num_parties > 2) {
    throw InvalidArgument("the two-party intercept attack needs exactly 2 parties");
  }
  config.eve.return_policy = parse_return_policy(flags.eve_policy);
  config.eve.ancilla_label = BellLabel::parse(flags.eve_ancilla);
  config.eve.targets.insert(flags.eve_targets.begin(), flags.eve_targets.end());
  config.comparison_fraction = flags.compare_fraction;
  config.ghz_variant_announce = flags.announce_basis;
  if (!flags.pair_labels.empty() || !flags.ghz_label.empty()) {
    EsInitialLabels labels;
    for (const auto& l : flags.pair_labels) labels.pairs.push_back(BellLabel::parse(l));
    if (!flags.ghz_label.empty()) labels.ghz = GhzLabel::parse(flags.ghz_label);
    config.initial_labels = labels;
  }
  config.threads = flags.threads;
  config.validate();
  return config;
}

/// Flat config keys address the run subcommand's options.
class RunConfig : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigBase::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty() && item.name != "++" && item.name != "--") item.parents = {"run"};
    }
    return items;
  }
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw esqkd::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw esqkd::Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-swapping key distribution and secret sharing simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file for run; keys mirror the long flag names");
  app.config_formatter(std::make_shared<RunConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string output;
  std::string format = "text";
  auto* tables = app.add_subcommand("tables", "Emit a correspondence table as CSV");
  std::string which = "I";
  tables->add_option("which", which, "I, II or III")->required();
  tables->add_option("--output", output, "Write to PATH instead of standard output");

  RunFlags flags;
  auto* run = app.add_subcommand("run", "Run a seeded Monte Carlo campaign");
  run->fallthrough();
  run->add_option("--output", output, "Write the report to PATH instead of standard output");
  run->add_option("--format", format, "Report format: csv (per-round transcript), json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  run->add_option("--protocol", flags.protocol,
                  "two_party_es, multiparty_es, multiparty_ghz, hbb99 or kki99")
      ->capture_default_str();
  run->add_option("--parties", flags.parties,
                  "Number of parties including Alice (default 2 for two_party_es, else 3)");
  run->add_option("--rounds", flags.rounds, "Protocol rounds")->capture_default_str();
  run->add_option("--seed", flags.seed, "64-bit seed")->capture_default_str();
  run->add_option("--eve", flags.eve,
                  "none, intercept, two_party_intercept or multiparty_intercept")
      ->capture_default_str();
  run->add_option("--eve-policy", flags.eve_policy,
                  "forward_captured, forward_ancilla or random_guess")
      ->capture_default_str();
  run->add_option("--eve-ancilla", flags.eve_ancilla, "Bell label of Eve's ancilla pairs")
      ->capture_default_str();
  run->add_option("--eve-target", flags.eve_targets,
                  "Attack only these parties' channels (default: all)");
  run->add_option("--compare-fraction", flags.compare_fraction,
                  "Fraction of kept rounds sacrificed to key comparison; 0 disables it")
      ->capture_default_str();
  run->add_flag("--announce-basis", flags.announce_basis,
                "multiparty_ghz: Alice announces the right measurement");
  run->add_option("--pair-labels", flags.pair_labels,
                  "Initial public Bell labels, in pair order (ES protocols)")
      ->delimiter(',');
  run->add_option("--ghz-label", flags.ghz_label, "Initial public GHZ label (multiparty_es)");
  run->add_option("--threads", flags.threads, "Worker threads; 0 uses every core")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the oracle and invariant suites");
  verify->add_option("--output", output, "Write to PATH instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (tables->parsed()) {
      const auto id = esqkd::parse_table_id(which);
      const auto rows = esqkd::generate_table(id);
      write_output(esqkd::table_csv(rows, esqkd::table_parties(id)), output);
      return kExitClean;
    }
    if (run->parsed()) {
      const auto config = to_config(flags);
      const auto report = esqkd::run_campaign(config);
      write_output(esqkd::format_report(report, esqkd::parse_report_format(format)), output);
      return report.alarm ? kExitAlarm : kExitClean;
    }
    if (verify->parsed()) {
      std::ostringstream out;
      bool all = true;
      for (const auto& suite : esqkd::run_verify()) {
        out << (suite.passed ? "PASS " : "FAIL ") << suite.name << ": " << suite.detail << '\n';
        all = all && suite.passed;
      }
      write_output(out.str(), output);
      return all ? kExitClean : kExitUsage;
    }
  } catch (const esqkd::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
