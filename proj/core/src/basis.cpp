#include "esqkd/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "esqkd/error.hpp"

namespace esqkd {

namespace {

constexpr double kHalfRoot = 0.70710678118654752440;

void validate_orthonormal(unsigned arity, const std::vector<BasisKet>& kets) {
  if (kets.size() != (std::size_t{1} << arity)) {
    throw InvalidArgument("a complete basis on " + std::to_string(arity) + " qubits needs " +
                          std::to_string(std::size_t{1} << arity) + " kets");
  }
  // Only kets sharing a computational index can overlap.
  std::map<std::uint32_t, std::vector<std::pair<std::size_t, Amplitude>>> touching;
  for (std::size_t k = 0; k < kets.size(); ++k) {
    for (const auto& [index, amp] : kets[k].terms) {
      if ((index >> arity) != 0) throw InvalidArgument("ket term index outside the subset");
      touching[index].emplace_back(k, amp);
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, Amplitude> overlaps;
  for (const auto& [index, entries] : touching) {
    for (const auto& [i, ai] : entries) {
      for (const auto& [j, aj] : entries) {
        if (i <= j) overlaps[{i, j}] += std::conj(ai) * aj;
      }
    }
  }
  for (std::size_t k = 0; k < kets.size(); ++k) {
    const auto it = overlaps.find({k, k});
    const double self = it == overlaps.end() ? 0.0 : it->second.real();
    if (std::abs(self - 1.0) > kIdentityTolerance) {
      throw InvalidArgument("basis ket '" + kets[k].label + "' is not normalized");
    }
  }
  for (const auto& [key, value] : overlaps) {
    if (key.first != key.second && std::abs(value) > kIdentityTolerance) {
      throw InvalidArgument("basis kets '" + kets[key.first].label + "' and '" +
                            kets[key.second].label + "' are not orthogonal");
    }
  }
}

}  // namespace

MeasurementBasis::MeasurementBasis(unsigned arity, std::vector<BasisKet> kets)
    : arity_(arity), kets_(std::move(kets)) {
  if (arity_ == 0 || arity_ > kMaxQubits) throw InvalidArgument("basis arity out of range");
  std::sort(kets_.begin(), kets_.end(),
            [](const BasisKet& a, const BasisKet& b) { return a.label < b.label; });
  for (std::size_t k = 1; k < kets_.size(); ++k) {
    if (kets_[k].label == kets_[k - 1].label) {
      throw InvalidArgument("duplicate basis label '" + kets_[k].label + "'");
    }
  }
  validate_orthonormal(arity_, kets_);
}

MeasurementBasis MeasurementBasis::bell() {
  static const MeasurementBasis basis = [] {
    std::vector<BasisKet> kets;
    for (const auto label : BellLabel::all()) kets.push_back(bell_ket(label));
    return MeasurementBasis(2, std::move(kets));
  }();
  return basis;
}

MeasurementBasis MeasurementBasis::ghz(unsigned width) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<const MeasurementBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[width];
  if (!slot) {
    if (width < 2 || width > kMaxQubits) throw InvalidArgument("GHZ basis width out of range");
    std::vector<BasisKet> kets;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << width); ++v) {
      kets.push_back(ghz_ket(GhzLabel(width, v)));
    }
    slot = std::make_unique<const MeasurementBasis>(width, std::move(kets));
  }
  return *slot;
}

MeasurementBasis MeasurementBasis::pauli(PauliAxis axis) {
  static const auto make = [](PauliAxis a) {
    return MeasurementBasis(1, {pauli_ket(a, +1), pauli_ket(a, -1)});
  };
  static const MeasurementBasis z = make(PauliAxis::z);
  static const MeasurementBasis x = make(PauliAxis::x);
  static const MeasurementBasis y = make(PauliAxis::y);
  switch (axis) {
    case PauliAxis::z: return z;
    case PauliAxis::x: return x;
    case PauliAxis::y: return y;
  }
  throw InvalidArgument("unknown Pauli axis");
}

const BasisKet& MeasurementBasis::ket(const std::string& label) const {
  for (const auto& k : kets_) {
    if (k.label == label) return k;
  }
  throw InvalidArgument("no basis ket labelled '" + label + "'");
}

BasisKet bell_ket(BellLabel label) {
  const double h = kHalfRoot;
  switch (label.index()) {
    case 0: return {label.str(), {{0b00, h}, {0b11, h}}};
    case 1: return {label.str(), {{0b00, h}, {0b11, -h}}};
    case 2: return {label.str(), {{0b01, h}, {0b10, h}}};
    default: return {label.str(), {{0b01, h}, {0b10, -h}}};
  }
}

BasisKet ghz_ket(const GhzLabel& label) {
  const unsigned n = label.width();
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  const std::uint32_t lead = label.value() >> 1;
  const bool minus = (label.value() & 1u) != 0;
  const std::uint32_t lead_all_ones = (std::uint32_t{1} << (n - 1)) - 1;
  const std::uint32_t first = (n >= 3 && lead == lead_all_ones) ? (std::uint32_t{1} << (n - 1)) : lead;
  const std::uint32_t second = first ^ all;
  return {label.str(), {{first, kHalfRoot}, {second, minus ? -kHalfRoot : kHalfRoot}}};
}

BasisKet pauli_ket(PauliAxis axis, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("Pauli eigenvalue must be +1 or -1");
  const std::string label = sign > 0 ? "+1" : "-1";
  const double h = kHalfRoot;
  const double s = static_cast<double>(sign);
  switch (axis) {
    case PauliAxis::z:
      return sign > 0 ? BasisKet{label, {{0, 1.0}}} : BasisKet{label, {{1, 1.0}}};
    case PauliAxis::x: return {label, {{0, h}, {1, s * h}}};
    case PauliAxis::y: return {label, {{0, h}, {1, Amplitude{0.0, s * h}}}};
  }
  throw InvalidArgument("unknown Pauli axis");
}

PureState prepare(const BasisKet& ket, std::vector<QubitName> names) {
  if (names.empty() || names.size() > kMaxQubits) throw InvalidArgument("bad register size");
  std::vector<Amplitude> amps(std::size_t{1} << names.size());
  for (const auto& [index, amp] : ket.terms) {
    if (index >= amps.size()) throw InvalidArgument("ket does not fit the named register");
    amps[index] += amp;
  }
  return PureState(std::move(names), std::move(amps));
}

PureState prepare_bell(BellLabel label, const QubitName& first, const QubitName& second) {
  if (first == second) throw InvalidArgument("Bell pair needs two distinct qubits");
  return prepare(bell_ket(label), {first, second});
}

PureState prepare_ghz(const GhzLabel& label, std::vector<QubitName> names) {
  if (names.size() != label.width()) {
    throw InvalidArgument("GHZ label width does not match the number of qubits");
  }
  return prepare(ghz_ket(label), std::move(names));
}

PureState prepare_ghz_z(std::vector<QubitName> names) {
  const auto width = static_cast<unsigned>(names.size());
  return prepare_ghz(GhzLabel::zeros(width), std::move(names));
}

PureState prepare_ghz_x(std::vector<QubitName> names) {
  const std::size_t n = names.size();
  if (n < 2 || n > kMaxQubits) throw InvalidArgument("GHZ register size out of range");
  std::vector<Amplitude> amps(std::size_t{1} << n);
  const double product = std::pow(kHalfRoot, static_cast<double>(n));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    // |+...+> contributes +product everywhere; |-...-> contributes (-1)^weight * product.
    const int weight = __builtin_popcountll(i);
    const double minus = (weight % 2 == 0) ? product : -product;
    amps[i] = kHalfRoot * (product + minus);
  }
  return PureState(std::move(names), std::move(amps));
}

}  // namespace esqkd
