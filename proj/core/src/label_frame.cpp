#include "esqkd/label_frame.hpp"

#include <algorithm>
#include <tuple>

#include "esqkd/error.hpp"

namespace esqkd {

namespace {

using CanonicalPair = std::tuple<QubitName, QubitName, BellLabel>;

std::vector<CanonicalPair> canonical(const LabelFrame& frame) {
  std::vector<CanonicalPair> out;
  for (const auto& p : frame.pairs()) {
    if (p.second < p.first) {
      out.emplace_back(p.second, p.first, p.label);
    } else {
      out.emplace_back(p.first, p.second, p.label);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LabelFrame::LabelFrame(std::initializer_list<BellPair> pairs) {
  for (const auto& p : pairs) add(p.first, p.second, p.label);
}

void LabelFrame::add(const QubitName& first, const QubitName& second, BellLabel label) {
  if (first == second) throw InvalidArgument("a Bell pair needs two distinct qubits");
  if (contains(first) || contains(second)) {
    throw InvalidArgument("qubit already paired in frame");
  }
  pairs_.push_back({first, second, label});
}

bool LabelFrame::contains(const QubitName& name) const {
  return std::any_of(pairs_.begin(), pairs_.end(), [&](const BellPair& p) {
    return p.first == name || p.second == name;
  });
}

std::optional<BellLabel> LabelFrame::label_of(const QubitName& a, const QubitName& b) const {
  for (const auto& p : pairs_) {
    if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return p.label;
  }
  return std::nullopt;
}

std::optional<QubitName> LabelFrame::partner_of(const QubitName& name) const {
  for (const auto& p : pairs_) {
    if (p.first == name) return p.second;
    if (p.second == name) return p.first;
  }
  return std::nullopt;
}

bool operator==(const LabelFrame& a, const LabelFrame& b) { return canonical(a) == canonical(b); }

LabelFrame apply_bsm(const LabelFrame& frame, const QubitName& first, const QubitName& second,
                     BellLabel outcome) {
  const auto& pairs = frame.pairs();
  const auto find = [&](const QubitName& name) {
    return std::find_if(pairs.begin(), pairs.end(), [&](const BellPair& p) {
      return p.first == name || p.second == name;
    });
  };
  const auto pa = find(first);
  const auto pb = find(second);
  if (pa == pairs.end() || pb == pairs.end()) {
    throw InvalidArgument("Bell measurement on a qubit outside the frame");
  }
  if (pa == pb) throw InvalidArgument("Bell measurement within a single pair");

  const QubitName left = pa->first == first ? pa->second : pa->first;
  const QubitName right = pb->first == second ? pb->second : pb->first;

  LabelFrame out;
  for (auto it = pairs.begin(); it != pairs.end(); ++it) {
    if (it != pa && it != pb) out.add(it->first, it->second, it->label);
  }
  out.add(first, second, outcome);
  out.add(left, right, swap_labels(pa->label, pb->label, outcome));
  return out;
}

std::vector<TwoPartyRow> enumerate_two_party_table(const LabelFrame& initial) {
  if (initial.pairs().size() != 3) throw InvalidArgument("two-party frame needs three pairs");
  const auto p12 = initial.label_of("1", "2");
  const auto p35 = initial.label_of("3", "5");
  const auto p46 = initial.label_of("4", "6");
  if (!p12 || !p35 || !p46) {
    throw InvalidArgument("two-party frame must hold pairs (1,2), (3,5) and (4,6)");
  }
  std::vector<TwoPartyRow> rows;
  for (const auto as : BellLabel::all()) {
    const LabelFrame after_alice = apply_bsm(initial, "1", "3", as);
    for (const auto bs : BellLabel::all()) {
      const LabelFrame after_bob = apply_bsm(after_alice, "2", "4", bs);
      rows.push_back({*after_bob.label_of("5", "6"), as, bs});
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace esqkd
