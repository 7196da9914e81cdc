#include "harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "esqkd/error.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/inference.hpp"
#include "esqkd/label_frame.hpp"
#include "esqkd/state.hpp"
#include "harness/tables.hpp"

namespace esqkd {

namespace {

bool near(double a, double b, double tolerance) { return std::abs(a - b) <= tolerance; }

SuiteResult fail(std::string name, const std::string& detail) {
  return {std::move(name), false, detail};
}

double max_gram_error(const MeasurementBasis& basis) {
  const auto& kets = basis.kets();
  std::vector<PureState> states;
  std::vector<QubitName> names;
  for (unsigned q = 0; q < basis.arity(); ++q) names.push_back("q" + std::to_string(q));
  for (const auto& k : kets) states.push_back(prepare(k, names));
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner_product(states[i], states[j]) - expected));
    }
  }
  return worst;
}

std::vector<TableRow> safe_table(TableId id, const VerifyOptions& options, std::string& error) {
  try {
    return generate_table(id, options.bell_basis);
  } catch (const Error& e) {
    error = e.what();
    return {};
  }
}

}  // namespace

SuiteResult verify_orthonormality(const VerifyOptions& options) {
  const std::string name = "basis orthonormality";
  double worst = max_gram_error(options.bell_basis);
  for (unsigned n = 2; n <= 4; ++n) worst = std::max(worst, max_gram_error(MeasurementBasis::ghz(n)));
  for (auto axis : {PauliAxis::z, PauliAxis::x, PauliAxis::y}) {
    worst = std::max(worst, max_gram_error(MeasurementBasis::pauli(axis)));
  }
  std::ostringstream detail;
  detail << "max |<i|j> - delta_ij| = " << worst;
  if (worst > kIdentityTolerance) return fail(name, detail.str());
  return {name, true, detail.str()};
}

SuiteResult verify_oracle_equivalence(const VerifyOptions& options) {
  const std::string name = "oracle equivalence";
  const auto layout = EsLayout::two_party();
  std::size_t branches = 0;
  for (unsigned config = 0; config < 64; ++config) {
    EsInitialLabels labels;
    labels.pairs = {BellLabel::from_index(config >> 4), BellLabel::from_index((config >> 2) & 3),
                    BellLabel::from_index(config & 3)};
    std::vector<TwoPartyRow> quantum;
    try {
      const auto table = build_inference_table(layout, labels, options.bell_basis);
      for (const auto& row : table.rows()) {
        quantum.push_back({BellLabel::from_index(row.public_label.value()), row.secrets[0],
                           row.secrets[1]});
        if (!near(row.probability, 1.0 / 16.0, kChainTolerance)) {
          return fail(name, "branch probability differs from 1/16");
        }
      }
    } catch (const Error& e) {
      return fail(name, e.what());
    }
    std::sort(quantum.begin(), quantum.end());
    const auto predicted = enumerate_two_party_table(public_frame(layout, labels));
    if (quantum != predicted) {
      std::ostringstream detail;
      detail << "initial labels " << labels.pairs[0].str() << ',' << labels.pairs[1].str() << ','
             << labels.pairs[2].str() << ": frame algebra and statevector disagree";
      return fail(name, detail.str());
    }
    branches += quantum.size();
  }
  return {name, true, "64 initial labelings, " + std::to_string(branches) + " branches"};
}

SuiteResult verify_two_party_table(const VerifyOptions& options) {
  const std::string name = "two-party table";
  std::string error;
  const auto rows = safe_table(TableId::I, options, error);
  if (!error.empty()) return fail(name, error);
  if (rows.size() != 16) return fail(name, std::to_string(rows.size()) + " rows, expected 16");
  for (const auto& row : rows) {
    const BellLabel ap = BellLabel::from_index(row.public_label.value());
    if (ap != (row.secrets[0] ^ row.secrets[1])) {
      return fail(name, "row " + ap.str() + "," + row.secrets[0].str() + "," +
                            row.secrets[1].str() + " breaks AP = AS xor BS");
    }
    if (!near(row.probability, 1.0 / 16.0, kChainTolerance)) {
      return fail(name, "row probability differs from 1/16");
    }
  }
  return {name, true, "16 rows, AP = AS xor BS"};
}

SuiteResult verify_three_party_relations(const VerifyOptions& options) {
  const std::string name = "three-party relations";
  std::string error;
  const auto rows = safe_table(TableId::II, options, error);
  if (!error.empty()) return fail(name, error);
  if (rows.size() != 64) return fail(name, std::to_string(rows.size()) + " rows, expected 64");
  for (const auto& row : rows) {
    const auto& ap = row.public_label;
    const auto& as = row.secrets[0];
    const auto& bs = row.secrets[1];
    const auto& cs = row.secrets[2];
    const bool ok = as.bit(1) == (bs.bit(1) ^ ap.bit(2)) && as.bit(1) == (cs.bit(1) ^ ap.bit(1)) &&
                    as.bit(2) == (bs.bit(2) ^ cs.bit(2) ^ ap.bit(3));
    if (!ok) {
      return fail(name, "row " + ap.str() + "," + as.str() + "," + bs.str() + "," + cs.str() +
                            " breaks a relation");
    }
    if (!near(row.probability, 1.0 / 64.0, kChainTolerance)) {
      return fail(name, "row probability differs from 1/64");
    }
  }
  return {name, true, "64 rows at 1/64"};
}

SuiteResult verify_secret_sharing(const VerifyOptions& options) {
  const std::string name = "secret sharing uniformity";
  std::string error;
  const auto rows = safe_table(TableId::II, options, error);
  if (!error.empty()) return fail(name, error);
  if (rows.empty()) return fail(name, "empty table");
  for (unsigned party = 1; party <= 2; ++party) {
    std::map<std::pair<std::uint32_t, unsigned>, std::pair<int, int>> counts;
    for (const auto& row : rows) {
      auto& [zeros, total] = counts[{row.public_label.value(), row.secrets[party].index()}];
      zeros += row.secrets[0].bit(2) == 0 ? 1 : 0;
      ++total;
    }
    for (const auto& [key, c] : counts) {
      if (2 * c.first != c.second) {
        return fail(name, "public " + GhzLabel(3, key.first).str() + " with " +
                              std::string(party == 1 ? "Bob" : "Carol") + " " +
                              BellLabel::from_index(key.second).str() + " leaks the second bit");
      }
    }
  }
  return {name, true, "second bit of AS balanced for every (AP, BS) and (AP, CS)"};
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  return {verify_orthonormality(options), verify_oracle_equivalence(options),
          verify_two_party_table(options), verify_three_party_relations(options),
          verify_secret_sharing(options)};
}

}  // namespace esqkd
