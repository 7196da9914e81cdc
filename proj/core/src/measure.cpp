#include "esqkd/measure.hpp"

#include <cmath>

#include "esqkd/error.hpp"

namespace esqkd {

namespace {

void check_ready(const PureState& state, const MeasurementBasis& basis,
                 std::span<const QubitName> names) {
  if (names.size() != basis.arity()) {
    throw InvalidArgument("measurement on " + std::to_string(names.size()) +
                          " qubits with a basis of arity " + std::to_string(basis.arity()));
  }
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > kChainTolerance) {
    throw ConsistencyError("register norm drifted to " + std::to_string(norm));
  }
}

Amplitude overlap_at(const BasisKet& ket, std::span<const Amplitude> amps, std::size_t rest,
                     const SubsetLayout& layout) {
  Amplitude c{0.0, 0.0};
  for (const auto& [index, amp] : ket.terms) c += std::conj(amp) * amps[rest + layout.offsets[index]];
  return c;
}

}  // namespace

std::vector<double> outcome_probabilities(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names) {
  check_ready(state, basis, names);
  const SubsetLayout layout = subset_layout(state, names);
  const auto amps = state.amplitudes();
  const auto& kets = basis.kets();
  std::vector<double> probs(kets.size(), 0.0);
  for (std::size_t r = 0; r < amps.size(); ++r) {
    if (r & layout.mask) continue;
    for (std::size_t k = 0; k < kets.size(); ++k) {
      probs[k] += std::norm(overlap_at(kets[k], amps, r, layout));
    }
  }
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > kChainTolerance) {
    throw ConsistencyError("outcome probabilities sum to " + std::to_string(total));
  }
  return probs;
}

PureState project(const PureState& state, const MeasurementBasis& basis,
                  std::span<const QubitName> names, std::size_t ket_index) {
  check_ready(state, basis, names);
  if (ket_index >= basis.kets().size()) throw InvalidArgument("ket index out of range");
  const SubsetLayout layout = subset_layout(state, names);
  const auto amps = state.amplitudes();
  const BasisKet& ket = basis.kets()[ket_index];

  std::vector<Amplitude> out(amps.size());
  double weight = 0.0;
  for (std::size_t r = 0; r < amps.size(); ++r) {
    if (r & layout.mask) continue;
    const Amplitude c = overlap_at(ket, amps, r, layout);
    weight += std::norm(c);
    for (const auto& [index, amp] : ket.terms) out[r + layout.offsets[index]] = c * amp;
  }
  if (weight <= kIdentityTolerance) {
    throw InvalidArgument("outcome '" + ket.label + "' has zero probability");
  }
  const double scale = 1.0 / std::sqrt(weight);
  for (auto& a : out) a *= scale;
  return PureState(state.qubit_order(), std::move(out));
}

std::vector<Outcome> outcome_distribution(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names) {
  const std::vector<double> probs = outcome_probabilities(state, basis, names);
  std::vector<Outcome> outcomes;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > kIdentityTolerance) {
      outcomes.push_back({basis.kets()[k].label, probs[k], project(state, basis, names, k)});
    }
  }
  return outcomes;
}

std::pair<std::size_t, PureState> measure(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names,
                                          RandomSource& randomness) {
  const std::vector<double> probs = outcome_probabilities(state, basis, names);
  const double u = randomness.uniform();
  double cumulative = 0.0;
  std::size_t chosen = probs.size();
  std::size_t last_possible = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= kIdentityTolerance) continue;
    last_possible = k;
    cumulative += probs[k];
    if (u < cumulative) {
      chosen = k;
      break;
    }
  }
  // Rounding can leave u just above the final cumulative sum.
  if (chosen == probs.size()) chosen = last_possible;
  return {chosen, project(state, basis, names, chosen)};
}

std::pair<BellLabel, PureState> measure_bell(const PureState& state, const QubitName& first,
                                             const QubitName& second, RandomSource& randomness) {
  const QubitName names[] = {first, second};
  const auto& basis = MeasurementBasis::bell();
  auto [index, post] = measure(state, basis, names, randomness);
  return {BellLabel::parse(basis.kets()[index].label), std::move(post)};
}

std::pair<GhzLabel, PureState> measure_ghz(const PureState& state,
                                           std::span<const QubitName> names,
                                           RandomSource& randomness) {
  if (names.size() < 2) throw InvalidArgument("GHZ measurement needs at least two qubits");
  const auto basis = MeasurementBasis::ghz(static_cast<unsigned>(names.size()));
  auto [index, post] = measure(state, basis, names, randomness);
  return {GhzLabel::parse(basis.kets()[index].label), std::move(post)};
}

std::pair<int, PureState> measure_pauli(const PureState& state, const QubitName& name,
                                        PauliAxis axis, RandomSource& randomness) {
  const QubitName names[] = {name};
  const auto basis = MeasurementBasis::pauli(axis);
  auto [index, post] = measure(state, basis, names, randomness);
  return {basis.kets()[index].label == "+1" ? 1 : -1, std::move(post)};
}

}  // namespace esqkd
