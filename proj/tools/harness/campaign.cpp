#include "harness/campaign.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "esqkd/error.hpp"
#include "harness/stats.hpp"

namespace esqkd {

namespace {

std::string fixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string join_map(const std::map<std::string, std::string>& values) {
  std::string out;
  for (const auto& [key, value] : values) {
    if (!out.empty()) out += ';';
    out += key + "=" + value;
  }
  return out;
}

std::string join_inferences(const std::map<std::string, Inference>& values) {
  std::string out;
  for (const auto& [key, value] : values) {
    if (!out.empty()) out += ';';
    out += key + "=" + value.inferred + "/" + value.actual;
  }
  return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::text;
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  throw InvalidArgument("unknown format '" + std::string(text) + "'");
}

std::string eve_flag(const EveStrategy& strategy) { return std::string(to_string(strategy.kind)); }

CampaignReport run_campaign(const ProtocolConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  CampaignReport report;
  report.config = config;
  report.records = run_protocol(config);
  report.rounds = report.records.size();
  for (const auto& r : report.records) report.kept += r.kept ? 1 : 0;
  report.keep_rate = static_cast<double>(report.kept) / static_cast<double>(report.rounds);

  if (config.comparison_fraction > 0.0 && report.kept > 0) {
    RandomSource randomness(config.seed, config.rounds);
    const auto comparison = compare_key_subset(report.records, config.comparison_fraction,
                                               randomness);
    report.tested = comparison.tested;
    report.mismatches = comparison.mismatches;
    report.alarm = comparison.alarm;
    report.mismatch_rate = static_cast<double>(comparison.mismatches) /
                           static_cast<double>(comparison.tested);
    report.mismatch_stderr = binomial_stderr(report.mismatch_rate, comparison.tested);
  }
  for (const auto& r : report.records) {
    if (r.kept && !r.consumed) report.key_bits += r.key_bits.size();
  }

  std::size_t eve_total = 0;
  for (const auto& r : report.records) eve_total += r.eve ? 1 : 0;
  if (eve_total > 0) {
    report.eve_accuracy = eve_key_accuracy(report.records);
    report.eve_accuracy_stderr = binomial_stderr(*report.eve_accuracy, eve_total);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const CampaignReport& report, ReportFormat format) {
  const auto& c = report.config;
  if (format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["protocol"] = to_string(c.protocol);
    doc["parties"] = c.num_parties;
    doc["rounds"] = report.rounds;
    doc["seed"] = c.seed;
    doc["eve"] = eve_flag(c.eve);
    doc["eve_policy"] = to_string(c.eve.return_policy);
    doc["eve_ancilla"] = c.eve.ancilla_label.str();
    doc["compare_fraction"] = c.comparison_fraction;
    doc["announce_basis"] = c.ghz_variant_announce;
    doc["kept"] = report.kept;
    doc["keep_rate"] = report.keep_rate;
    doc["key_bits"] = report.key_bits;
    doc["tested"] = report.tested;
    doc["mismatches"] = report.mismatches;
    doc["mismatch_rate"] = report.mismatch_rate;
    doc["mismatch_stderr"] = report.mismatch_stderr;
    doc["alarm"] = report.alarm;
    doc["eve_accuracy"] = report.eve_accuracy ? nlohmann::ordered_json(*report.eve_accuracy)
                                              : nlohmann::ordered_json(nullptr);
    doc["eve_accuracy_stderr"] = report.eve_accuracy_stderr
                                     ? nlohmann::ordered_json(*report.eve_accuracy_stderr)
                                     : nlohmann::ordered_json(nullptr);
    doc["elapsed_seconds"] = report.elapsed_seconds;
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "round,kept,public,secrets,inferences,mismatch,consumed,eve\n";
    for (const auto& r : report.records) {
      out << r.round << ',' << (r.kept ? 1 : 0) << ',' << r.public_result << ','
          << join_map(r.secret_results) << ',' << join_inferences(r.inferences) << ','
          << (r.detected_mismatch ? 1 : 0) << ',' << (r.consumed ? 1 : 0) << ',';
      if (r.eve) out << r.eve->inferred << '/' << r.eve->actual;
      out << '\n';
    }
    return out.str();
  }

  out << "protocol: " << to_string(c.protocol) << '\n'
      << "parties: " << c.num_parties << '\n'
      << "rounds: " << report.rounds << '\n'
      << "seed: " << c.seed << '\n'
      << "eve: " << eve_flag(c.eve) << '\n'
      << "eve_policy: " << to_string(c.eve.return_policy) << '\n'
      << "eve_ancilla: " << c.eve.ancilla_label.str() << '\n'
      << "compare_fraction: " << fixed(c.comparison_fraction) << '\n'
      << "announce_basis: " << (c.ghz_variant_announce ? "true" : "false") << '\n'
      << "kept: " << report.kept << '\n'
      << "keep_rate: " << fixed(report.keep_rate) << '\n'
      << "key_bits: " << report.key_bits << '\n'
      << "tested: " << report.tested << '\n'
      << "mismatches: " << report.mismatches << '\n'
      << "mismatch_rate: " << fixed(report.mismatch_rate) << '\n'
      << "mismatch_stderr: " << fixed(report.mismatch_stderr) << '\n'
      << "alarm: " << (report.alarm ? "true" : "false") << '\n';
  if (report.eve_accuracy) {
    out << "eve_accuracy: " << fixed(*report.eve_accuracy) << '\n'
        << "eve_accuracy_stderr: " << fixed(*report.eve_accuracy_stderr) << '\n';
  }
  out << "elapsed_seconds: " << fixed(report.elapsed_seconds, 3) << '\n';
  return out.str();
}

}  // namespace esqkd
