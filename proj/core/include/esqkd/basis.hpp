#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esqkd/labels.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

/// Sparse ket over a k-qubit subset: (subset index, amplitude) terms, where subset index bit
/// k-1 belongs to the first qubit of the subset.
struct BasisKet {
  std::string label;
  std::vector<std::pair<std::uint32_t, Amplitude>> terms;
};

/// Complete orthonormal measurement basis on `arity` qubits; kets are kept in label order.
class MeasurementBasis {
 public:
  /// Validates completeness and orthonormality to kIdentityTolerance.
  MeasurementBasis(unsigned arity, std::vector<BasisKet> kets);

  static MeasurementBasis bell();
  static MeasurementBasis ghz(unsigned width);
  static MeasurementBasis pauli(PauliAxis axis);

  unsigned arity() const { return arity_; }
  const std::vector<BasisKet>& kets() const { return kets_; }
  const BasisKet& ket(const std::string& label) const;

 private:
  unsigned arity_;
  std::vector<BasisKet> kets_;
};

BasisKet bell_ket(BellLabel label);
BasisKet ghz_ket(const GhzLabel& label);
/// Pauli eigenket; label "+1" or "-1". sigma_y eigenstates are (|0> +- i|1>)/sqrt2.
BasisKet pauli_ket(PauliAxis axis, int sign);

/// Prepares `ket` on a fresh register named `names` (first name = most significant bit).
PureState prepare(const BasisKet& ket, std::vector<QubitName> names);

PureState prepare_bell(BellLabel label, const QubitName& first, const QubitName& second);
PureState prepare_ghz(const GhzLabel& label, std::vector<QubitName> names);
/// (|000> + |111>)/sqrt2.
PureState prepare_ghz_z(std::vector<QubitName> names);
/// (|+++> + |--->)/sqrt2 expanded in the computational basis.
PureState prepare_ghz_x(std::vector<QubitName> names);

}  // namespace esqkd
