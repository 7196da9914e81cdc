#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esqkd/protocols.hpp"
#include "esqkd/records.hpp"

namespace esqkd {

enum class ReportFormat { text, json, csv };

ReportFormat parse_report_format(std::string_view text);

struct CampaignReport {
  ProtocolConfig config;
  std::uint64_t rounds = 0;
  std::uint64_t kept = 0;
  double keep_rate = 0.0;
  /// Key bits left in kept rounds that were not consumed by the comparison.
  std::size_t key_bits = 0;
  std::size_t tested = 0;
  std::size_t mismatches = 0;
  double mismatch_rate = 0.0;
  double mismatch_stderr = 0.0;
  bool alarm = false;
  std::optional<double> eve_accuracy;
  std::optional<double> eve_accuracy_stderr;
  double elapsed_seconds = 0.0;
  std::vector<RoundRecord> records;
};

/// Runs the protocol, then the key comparison on RandomSource(seed, rounds) when
/// comparison_fraction > 0.
CampaignReport run_campaign(const ProtocolConfig& config);

/// text: "key: value" lines; json: one document; csv: the per-round transcript.
/// Identical reports format identically apart from elapsed_seconds.
std::string format_report(const CampaignReport& report, ReportFormat format);

/// The eavesdropper flag value for a strategy ("none", "intercept" style names).
std::string eve_flag(const EveStrategy& strategy);

}  // namespace esqkd
