#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "esqkd/basis.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/labels.hpp"

namespace esqkd {

/// One nonzero-probability joint outcome: Alice's public result and every party's secret
/// Bell result (index 0 = Alice).
struct TableRow {
  GhzLabel public_label;
  std::vector<BellLabel> secrets;
  double probability = 0.0;

  friend bool operator==(const TableRow& a, const TableRow& b) {
    return a.public_label == b.public_label && a.secrets == b.secrets;
  }
};

/// Exhaustive correspondence between public and secret results, with lookups for the
/// inferences each party (or coalition) can make.
class InferenceTable {
 public:
  /// Rows are sorted by (public, Alice, Bob, ...).
  InferenceTable(unsigned num_parties, std::vector<TableRow> rows);

  unsigned num_parties() const { return num_parties_; }
  unsigned public_width() const { return public_width_; }
  const std::vector<TableRow>& rows() const { return rows_; }
  std::vector<TableRow> with_public(const GhzLabel& public_label) const;

  /// First bit of AS from the public result and party `party`'s own secret.
  /// Throws ProtocolViolation if the pair does not occur or does not fix the bit.
  int first_bit(unsigned party, const GhzLabel& public_label, BellLabel own) const;
  /// Second bit of AS from the public result and every non-Alice secret (party order).
  int second_bit(const GhzLabel& public_label, std::span<const BellLabel> others) const;
  /// Full AS from the public result and every non-Alice secret (party order).
  BellLabel alice_secret(const GhzLabel& public_label, std::span<const BellLabel> others) const;

 private:
  std::size_t pooled_key(const GhzLabel& public_label, std::span<const BellLabel> others) const;

  unsigned num_parties_;
  unsigned public_width_;
  std::vector<TableRow> rows_;
  // -1: no row, -2: rows disagree, otherwise the value.
  std::vector<std::vector<int>> first_bit_lookup_;
  std::vector<int> pooled_lookup_;
};

/// Enumerates every joint outcome of the protocol on `layout` by chaining exact outcome
/// distributions: Alice's secret, each party's secret, then Alice's public measurement.
/// `bell_basis` is used for every Bell measurement (swap in a relabelled basis for
/// negative controls).
InferenceTable build_inference_table(const EsLayout& layout, const EsInitialLabels& labels,
                                     const MeasurementBasis& bell_basis = MeasurementBasis::bell());

/// AS from (AP, BS) for the two-party protocol.
BellLabel infer_two_party(BellLabel ap, BellLabel bs, const InferenceTable& table);
/// Same, against the all-00 initial state.
BellLabel infer_two_party(BellLabel ap, BellLabel bs);

/// `party` is 1-based among non-Alice parties (Bob = 1).
int infer_first_bit(unsigned party, const GhzLabel& ap, BellLabel own_secret,
                    const InferenceTable& table);

/// `secrets` keyed by party name; all non-Alice parties must be present or
/// InsufficientShares is thrown.
int infer_second_bit(const std::map<std::string, BellLabel>& secrets, const GhzLabel& ap,
                     const InferenceTable& table);

}  // namespace esqkd
