#include "esqkd/inference.hpp"

#include <algorithm>
#include <functional>

#include "esqkd/error.hpp"
#include "esqkd/measure.hpp"
#include "esqkd/records.hpp"

namespace esqkd {

namespace {

constexpr int kNoRow = -1;
constexpr int kAmbiguous = -2;

void merge(int& slot, int value) {
  if (slot == kNoRow) {
    slot = value;
  } else if (slot != value) {
    slot = kAmbiguous;
  }
}

}  // namespace

InferenceTable::InferenceTable(unsigned num_parties, std::vector<TableRow> rows)
    : num_parties_(num_parties), public_width_(0), rows_(std::move(rows)) {
  if (num_parties_ < 2) throw InvalidArgument("an inference table needs at least two parties");
  if (rows_.empty()) throw InvalidArgument("an inference table needs at least one row");
  public_width_ = rows_.front().public_label.width();
  for (const auto& row : rows_) {
    if (row.secrets.size() != num_parties_ || row.public_label.width() != public_width_) {
      throw InvalidArgument("malformed inference table row");
    }
  }
  std::sort(rows_.begin(), rows_.end(), [](const TableRow& a, const TableRow& b) {
    if (a.public_label != b.public_label) return a.public_label < b.public_label;
    return a.secrets < b.secrets;
  });

  const std::size_t publics = std::size_t{1} << public_width_;
  first_bit_lookup_.assign(num_parties_, std::vector<int>(publics * 4, kNoRow));
  std::size_t pooled_size = publics;
  for (unsigned p = 1; p < num_parties_; ++p) pooled_size *= 4;
  pooled_lookup_.assign(pooled_size, kNoRow);

  for (const auto& row : rows_) {
    const int as_first = row.secrets[0].high();
    for (unsigned p = 1; p < num_parties_; ++p) {
      merge(first_bit_lookup_[p][row.public_label.value() * 4 + row.secrets[p].index()], as_first);
    }
    const std::span<const BellLabel> others(row.secrets.data() + 1, row.secrets.size() - 1);
    merge(pooled_lookup_[pooled_key(row.public_label, others)],
          static_cast<int>(row.secrets[0].index()));
  }
}

std::vector<TableRow> InferenceTable::with_public(const GhzLabel& public_label) const {
  std::vector<TableRow> out;
  std::copy_if(rows_.begin(), rows_.end(), std::back_inserter(out),
               [&](const TableRow& r) { return r.public_label == public_label; });
  return out;
}

std::size_t InferenceTable::pooled_key(const GhzLabel& public_label,
                                       std::span<const BellLabel> others) const {
  if (public_label.width() != public_width_) {
    throw InvalidArgument("public label width does not match the table");
  }
  if (others.size() + 1 != num_parties_) {
    throw InvalidArgument("pooled lookup needs every non-Alice secret");
  }
  std::size_t key = public_label.value();
  for (const auto& s : others) key = key * 4 + s.index();
  return key;
}

int InferenceTable::first_bit(unsigned party, const GhzLabel& public_label, BellLabel own) const {
  if (party < 1 || party >= num_parties_) throw InvalidArgument("party index out of range");
  if (public_label.width() != public_width_) {
    throw InvalidArgument("public label width does not match the table");
  }
  const int value = first_bit_lookup_[party][public_label.value() * 4 + own.index()];
  if (value == kNoRow) {
    throw ProtocolViolation("(" + public_label.str() + ", " + own.str() +
                            ") never occurs for " + party_name(party));
  }
  if (value == kAmbiguous) {
    throw ProtocolViolation("(" + public_label.str() + ", " + own.str() +
                            ") does not determine the first bit for " + party_name(party));
  }
  return value;
}

BellLabel InferenceTable::alice_secret(const GhzLabel& public_label,
                                       std::span<const BellLabel> others) const {
  const int value = pooled_lookup_[pooled_key(public_label, others)];
  if (value == kNoRow) throw ProtocolViolation("secret combination never occurs");
  if (value == kAmbiguous) throw ProtocolViolation("secret combination does not determine AS");
  return BellLabel::from_index(static_cast<unsigned>(value));
}

int InferenceTable::second_bit(const GhzLabel& public_label,
                               std::span<const BellLabel> others) const {
  return alice_secret(public_label, others).low();
}

InferenceTable build_inference_table(const EsLayout& layout, const EsInitialLabels& labels,
                                     const MeasurementBasis& bell_basis) {
  if (bell_basis.arity() != 2) throw InvalidArgument("Bell basis must act on two qubits");
  const PureState initial = prepare_initial_state(layout, labels);
  const unsigned parties = layout.num_parties;
  const bool public_is_bell = layout.public_qubits.size() == 2;
  const MeasurementBasis public_basis =
      public_is_bell ? bell_basis
                     : MeasurementBasis::ghz(static_cast<unsigned>(layout.public_qubits.size()));

  std::vector<TableRow> rows;
  std::vector<BellLabel> secrets;
  std::function<void(const PureState&, unsigned, double)> descend =
      [&](const PureState& state, unsigned party, double probability) {
        if (party == parties) {
          for (const auto& o : outcome_distribution(state, public_basis, layout.public_qubits)) {
            const GhzLabel ap = public_is_bell ? GhzLabel::from_bell(BellLabel::parse(o.label))
                                               : GhzLabel::parse(o.label);
            rows.push_back({ap, secrets, probability * o.probability});
          }
          return;
        }
        const auto& [a, b] = layout.secret_pairs[party];
        const QubitName pair[] = {a, b};
        for (const auto& o : outcome_distribution(state, bell_basis, pair)) {
          secrets.push_back(BellLabel::parse(o.label));
          descend(o.post_state.factor_out(pair), party + 1, probability * o.probability);
          secrets.pop_back();
        }
      };
  descend(initial, 0, 1.0);
  return InferenceTable(parties, std::move(rows));
}

BellLabel infer_two_party(BellLabel ap, BellLabel bs, const InferenceTable& table) {
  if (table.num_parties() != 2) throw InvalidArgument("not a two-party table");
  const BellLabel others[] = {bs};
  return table.alice_secret(GhzLabel::from_bell(ap), others);
}

BellLabel infer_two_party(BellLabel ap, BellLabel bs) {
  static const InferenceTable table = [] {
    const auto layout = EsLayout::two_party();
    return build_inference_table(layout, EsInitialLabels::zeros(layout));
  }();
  return infer_two_party(ap, bs, table);
}

int infer_first_bit(unsigned party, const GhzLabel& ap, BellLabel own_secret,
                    const InferenceTable& table) {
  return table.first_bit(party, ap, own_secret);
}

int infer_second_bit(const std::map<std::string, BellLabel>& secrets, const GhzLabel& ap,
                     const InferenceTable& table) {
  std::vector<BellLabel> others;
  for (unsigned p = 1; p < table.num_parties(); ++p) {
    const auto it = secrets.find(party_name(p));
    if (it == secrets.end()) {
      throw InsufficientShares("the second bit needs " + party_name(p) + "'s secret result");
    }
    others.push_back(it->second);
  }
  return table.second_bit(ap, others);
}

}  // namespace esqkd
