#include "esqkd/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "esqkd/error.hpp"

namespace esqkd {

namespace {

void require_distinct(const std::vector<QubitName>& names) {
  std::set<QubitName> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw InvalidArgument("duplicate qubit name '" + name.str() + "'");
    }
  }
}

}  // namespace

PureState::PureState(std::vector<QubitName> order, std::vector<Amplitude> amplitudes)
    : order_(std::move(order)), amplitudes_(std::move(amplitudes)) {
  if (order_.empty()) throw InvalidArgument("a register needs at least one qubit");
  if (order_.size() > kMaxQubits) {
    throw CapacityError("register of " + std::to_string(order_.size()) +
                        " qubits exceeds the cap of " + std::to_string(kMaxQubits));
  }
  require_distinct(order_);
  if (amplitudes_.size() != (std::size_t{1} << order_.size())) {
    throw InvalidArgument("amplitude vector length must be 2^num_qubits");
  }
  double norm = 0.0;
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidArgument("non-finite amplitude");
    }
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > kChainTolerance) {
    throw ConsistencyError("state is not normalized (|psi|^2 = " + std::to_string(norm) + ")");
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amplitudes_) a *= scale;
}

bool PureState::contains(const QubitName& name) const {
  return std::find(order_.begin(), order_.end(), name) != order_.end();
}

std::size_t PureState::position(const QubitName& name) const {
  const auto it = std::find(order_.begin(), order_.end(), name);
  if (it == order_.end()) throw InvalidArgument("unknown qubit '" + name.str() + "'");
  return static_cast<std::size_t>(it - order_.begin());
}

Amplitude PureState::amplitude(std::string_view bits) const {
  if (bits.size() != order_.size()) {
    throw InvalidArgument("basis ket length does not match the register");
  }
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("basis ket must be a bit string");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return amplitudes_[index];
}

double PureState::norm_squared() const {
  double norm = 0.0;
  for (const auto& a : amplitudes_) norm += std::norm(a);
  return norm;
}

PureState PureState::reordered(const std::vector<QubitName>& new_order) const {
  if (new_order.size() != order_.size()) {
    throw InvalidArgument("reordering must be a permutation of the register");
  }
  require_distinct(new_order);
  const std::size_t n = order_.size();
  // source_shift[k]: bit shift in the old index of the qubit at new position k.
  std::vector<std::size_t> source_shift(n);
  for (std::size_t k = 0; k < n; ++k) {
    source_shift[k] = n - 1 - position(new_order[k]);
  }
  std::vector<Amplitude> out(amplitudes_.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::size_t source = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((j >> (n - 1 - k)) & 1u) source |= std::size_t{1} << source_shift[k];
    }
    out[j] = amplitudes_[source];
  }
  return PureState(new_order, std::move(out));
}

PureState PureState::renamed(const QubitName& from, const QubitName& to) const {
  auto order = order_;
  order[position(from)] = to;
  return PureState(std::move(order), amplitudes_);
}

PureState PureState::factor_out(std::span<const QubitName> names) const {
  if (names.empty()) return *this;
  if (names.size() >= order_.size()) {
    throw InvalidArgument("factor_out must leave at least one qubit");
  }
  const SubsetLayout layout = subset_layout(*this, names);

  // The subset's local state is read off the rest-configuration carrying the most weight.
  std::size_t best_rest = 0;
  double best_weight = -1.0;
  for (std::size_t r = 0; r < amplitudes_.size(); ++r) {
    if (r & layout.mask) continue;
    double weight = 0.0;
    for (std::size_t off : layout.offsets) weight += std::norm(amplitudes_[r + off]);
    if (weight > best_weight) {
      best_weight = weight;
      best_rest = r;
    }
  }
  std::vector<Amplitude> local(layout.offsets.size());
  const double local_norm = std::sqrt(best_weight);
  for (std::size_t s = 0; s < local.size(); ++s) {
    local[s] = amplitudes_[best_rest + layout.offsets[s]] / local_norm;
  }

  std::vector<QubitName> rest_order;
  for (const auto& name : order_) {
    if (std::find(names.begin(), names.end(), name) == names.end()) rest_order.push_back(name);
  }
  std::vector<Amplitude> rest(std::size_t{1} << rest_order.size());
  std::size_t out = 0;
  for (std::size_t r = 0; r < amplitudes_.size(); ++r) {
    if (r & layout.mask) continue;
    Amplitude c{0.0, 0.0};
    for (std::size_t s = 0; s < local.size(); ++s) {
      c += std::conj(local[s]) * amplitudes_[r + layout.offsets[s]];
    }
    rest[out++] = c;
  }
  double norm = 0.0;
  for (const auto& a : rest) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kChainTolerance) {
    throw ConsistencyError("cannot factor out qubits entangled with the rest of the register");
  }
  return PureState(std::move(rest_order), std::move(rest));
}

PureState basis_state(std::vector<QubitName> names, std::string_view bits) {
  if (bits.size() != names.size()) throw InvalidArgument("basis ket length mismatch");
  std::vector<Amplitude> amps(std::size_t{1} << names.size());
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("basis ket must be a bit string");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  amps[index] = 1.0;
  return PureState(std::move(names), std::move(amps));
}

PureState tensor(std::span<const PureState> states) {
  if (states.empty()) throw InvalidArgument("tensor of an empty list");
  std::vector<QubitName> order;
  for (const auto& s : states) {
    order.insert(order.end(), s.qubit_order().begin(), s.qubit_order().end());
  }
  if (order.size() > kMaxQubits) {
    throw CapacityError("tensor product of " + std::to_string(order.size()) +
                        " qubits exceeds the cap of " + std::to_string(kMaxQubits));
  }
  {
    std::set<QubitName> seen;
    for (const auto& name : order) {
      if (!seen.insert(name).second) {
        throw InvalidArgument("qubit name collision '" + name.str() + "' in tensor product");
      }
    }
  }
  std::vector<Amplitude> amps{Amplitude{1.0, 0.0}};
  for (const auto& s : states) {
    std::vector<Amplitude> next;
    next.reserve(amps.size() * s.dimension());
    for (const auto& a : amps) {
      for (const auto& b : s.amplitudes()) next.push_back(a * b);
    }
    amps = std::move(next);
  }
  return PureState(std::move(order), std::move(amps));
}

PureState tensor(std::initializer_list<PureState> states) {
  return tensor(std::span<const PureState>(states.begin(), states.size()));
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  const PureState aligned = b.reordered(a.qubit_order());
  Amplitude sum{0.0, 0.0};
  const auto lhs = a.amplitudes();
  const auto rhs = aligned.amplitudes();
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += std::conj(lhs[i]) * rhs[i];
  return sum;
}

SubsetLayout subset_layout(const PureState& state, std::span<const QubitName> names) {
  const std::size_t n = state.num_qubits();
  const std::size_t k = names.size();
  std::vector<std::size_t> shifts(k);
  std::set<QubitName> seen;
  SubsetLayout layout;
  for (std::size_t i = 0; i < k; ++i) {
    if (!seen.insert(names[i]).second) {
      throw InvalidArgument("qubit '" + names[i].str() + "' listed twice");
    }
    shifts[i] = n - 1 - state.position(names[i]);
    layout.mask |= std::size_t{1} << shifts[i];
  }
  layout.offsets.resize(std::size_t{1} << k);
  for (std::size_t s = 0; s < layout.offsets.size(); ++s) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((s >> (k - 1 - i)) & 1u) off |= std::size_t{1} << shifts[i];
    }
    layout.offsets[s] = off;
  }
  return layout;
}

}  // namespace esqkd
