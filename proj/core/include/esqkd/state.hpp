#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esqkd {

using Amplitude = std::complex<double>;

/// Largest register the statevector engine will build.
inline constexpr std::size_t kMaxQubits = 16;
/// Tolerance for algebraic identities (normalization, orthonormality).
inline constexpr double kIdentityTolerance = 1e-12;
/// Tolerance for quantities accumulated along measurement chains.
inline constexpr double kChainTolerance = 1e-9;

/// Protocol-level qubit name ("1", "A", "e:A", ...).
class QubitName {
 public:
  QubitName() = default;
  QubitName(std::string label) : label_(std::move(label)) {}  // NOLINT(google-explicit-constructor)
  QubitName(const char* label) : label_(label) {}             // NOLINT(google-explicit-constructor)

  const std::string& str() const { return label_; }

  friend auto operator<=>(const QubitName&, const QubitName&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QubitName& name) {
    return os << name.label_;
  }

 private:
  std::string label_;
};

/// Exact pure state of a named multi-qubit register.
///
/// Position 0 of qubit_order() is the most significant bit of the amplitude index, so the
/// amplitude of |b0 b1 ... b(n-1)> sits at index sum(b_p << (n-1-p)).
class PureState {
 public:
  /// Validates names (distinct, 1..kMaxQubits), length (2^n), finiteness and norm (within
  /// kChainTolerance), then renormalizes.
  PureState(std::vector<QubitName> order, std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return order_.size(); }
  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<QubitName>& qubit_order() const { return order_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  bool contains(const QubitName& name) const;
  /// Register position of name; throws InvalidArgument when absent.
  std::size_t position(const QubitName& name) const;

  /// Amplitude of the computational basis ket spelled in qubit_order(), e.g. "0110".
  Amplitude amplitude(std::string_view bits) const;
  double norm_squared() const;

  /// Same physical state with the register laid out in new_order (a permutation).
  PureState reordered(const std::vector<QubitName>& new_order) const;
  PureState renamed(const QubitName& from, const QubitName& to) const;

  /// Removes qubits that are in a product state with the rest of the register.
  /// Throws ConsistencyError if they are entangled with the remaining qubits.
  PureState factor_out(std::span<const QubitName> names) const;

 private:
  std::vector<QubitName> order_;
  std::vector<Amplitude> amplitudes_;
};

/// Computational basis state, e.g. basis_state({"a","b"}, "01").
PureState basis_state(std::vector<QubitName> names, std::string_view bits);

/// Joint register in the order given; names must be pairwise disjoint.
PureState tensor(std::span<const PureState> states);
PureState tensor(std::initializer_list<PureState> states);

/// Overlap <a|b>; both registers must carry the same qubit names (any order).
Amplitude inner_product(const PureState& a, const PureState& b);

/// Bit layout of a named subset inside a register.
///
/// offsets[s] is the index contribution of subset value s (first name = most significant
/// bit of s); mask covers every subset bit in the full index.
struct SubsetLayout {
  std::vector<std::size_t> offsets;
  std::size_t mask = 0;
};

SubsetLayout subset_layout(const PureState& state, std::span<const QubitName> names);

}  // namespace esqkd
