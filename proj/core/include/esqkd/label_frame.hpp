#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "esqkd/labels.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

/// Symbolic label algebra for entanglement swapping over products of Bell pairs.
///
/// Labels are tracked up to global phase only.

/// If pairs (a,b) and (c,d) carry p and q and a Bell measurement on (b,c) yields r,
/// the pair (a,d) carries p ^ q ^ r.
constexpr BellLabel swap_labels(BellLabel p, BellLabel q, BellLabel r) { return p ^ q ^ r; }

struct BellPair {
  QubitName first;
  QubitName second;
  BellLabel label;
};

/// Product of Bell states; every qubit belongs to at most one pair.
class LabelFrame {
 public:
  LabelFrame() = default;
  LabelFrame(std::initializer_list<BellPair> pairs);

  /// Throws InvalidArgument if either qubit already belongs to a pair.
  void add(const QubitName& first, const QubitName& second, BellLabel label);

  bool contains(const QubitName& name) const;
  /// Label of the pair {a, b} in either order, if present.
  std::optional<BellLabel> label_of(const QubitName& a, const QubitName& b) const;
  /// Partner of `name`, if it belongs to a pair.
  std::optional<QubitName> partner_of(const QubitName& name) const;

  const std::vector<BellPair>& pairs() const { return pairs_; }

  /// Equal when both frames hold the same unordered pairs with the same labels.
  friend bool operator==(const LabelFrame& a, const LabelFrame& b);

 private:
  std::vector<BellPair> pairs_;
};

/// Bell measurement with a known outcome on qubits from two different pairs: the measured
/// pair takes `outcome` and the two leftover qubits form a pair labelled
/// swap_labels(p, q, outcome).
LabelFrame apply_bsm(const LabelFrame& frame, const QubitName& first, const QubitName& second,
                     BellLabel outcome);

struct TwoPartyRow {
  BellLabel ap;
  BellLabel as;
  BellLabel bs;

  friend auto operator<=>(const TwoPartyRow&, const TwoPartyRow&) = default;
};

/// The 16 (public, Alice secret, Bob secret) combinations of the two-party protocol.
/// `initial` must hold exactly the pairs (1,2), (3,5) and (4,6). Rows sorted by (ap, as).
std::vector<TwoPartyRow> enumerate_two_party_table(const LabelFrame& initial);

}  // namespace esqkd
