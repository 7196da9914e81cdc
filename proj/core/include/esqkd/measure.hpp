#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esqkd/basis.hpp"
#include "esqkd/labels.hpp"
#include "esqkd/random.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

/// One branch of a projective measurement.
struct Outcome {
  std::string label;
  double probability;
  PureState post_state;
};

/// Born probabilities of every ket of `basis` on `names`, in ket order.
std::vector<double> outcome_probabilities(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names);

/// All outcomes with probability above kIdentityTolerance, ordered by label, with their
/// renormalized post-measurement states. Measured qubits stay in the register.
std::vector<Outcome> outcome_distribution(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names);

/// Projects onto the ket at `ket_index`; the outcome must have nonzero probability.
PureState project(const PureState& state, const MeasurementBasis& basis,
                  std::span<const QubitName> names, std::size_t ket_index);

/// Samples one outcome by the Born rule. Returns the ket index and the post-measurement state.
std::pair<std::size_t, PureState> measure(const PureState& state, const MeasurementBasis& basis,
                                          std::span<const QubitName> names,
                                          RandomSource& randomness);

std::pair<BellLabel, PureState> measure_bell(const PureState& state, const QubitName& first,
                                             const QubitName& second, RandomSource& randomness);
std::pair<GhzLabel, PureState> measure_ghz(const PureState& state,
                                           std::span<const QubitName> names,
                                           RandomSource& randomness);
/// Returns the eigenvalue sign (+1 or -1).
std::pair<int, PureState> measure_pauli(const PureState& state, const QubitName& name,
                                        PauliAxis axis, RandomSource& randomness);

}  // namespace esqkd
