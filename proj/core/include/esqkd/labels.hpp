#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace esqkd {

/// Two-bit Bell outcome label written b1b0.
///
///   00 <-> (|00> + |11>)/sqrt2     01 <-> (|00> - |11>)/sqrt2
///   10 <-> (|01> + |10>)/sqrt2     11 <-> (|01> - |10>)/sqrt2
///
/// Under entanglement swapping labels compose by componentwise XOR.
class BellLabel {
 public:
  constexpr BellLabel() = default;
  constexpr BellLabel(int high, int low)
      : bits_(static_cast<std::uint8_t>(((high & 1) << 1) | (low & 1))) {}

  static constexpr BellLabel from_index(unsigned index) {
    return BellLabel(static_cast<int>((index >> 1) & 1u), static_cast<int>(index & 1u));
  }
  /// Parses "00", "01", "10" or "11".
  static BellLabel parse(std::string_view text);

  static constexpr std::array<BellLabel, 4> all() {
    return {from_index(0), from_index(1), from_index(2), from_index(3)};
  }

  constexpr unsigned index() const { return bits_; }
  constexpr int high() const { return bits_ >> 1; }
  constexpr int low() const { return bits_ & 1; }
  /// 1-based, left to right: bit(1) == high(), bit(2) == low().
  int bit(int position) const;
  std::string str() const;

  friend constexpr BellLabel operator^(BellLabel a, BellLabel b) {
    return from_index(a.bits_ ^ b.bits_);
  }
  friend constexpr auto operator<=>(BellLabel, BellLabel) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// N-bit GHZ outcome label b1...bN, N >= 2. Bit b1 is the most significant bit of value().
///
/// The leading N-1 bits select the branch pair {|0 b1..b(N-1)>, its complement} and bN
/// selects the relative sign. When the leading bits are all ones (N >= 3) the complement
/// |10..0> is written first.
class GhzLabel {
 public:
  GhzLabel() = default;
  GhzLabel(unsigned width, std::uint32_t value);

  static GhzLabel parse(std::string_view text);
  static GhzLabel zeros(unsigned width) { return GhzLabel(width, 0); }
  static GhzLabel from_bell(BellLabel label) { return GhzLabel(2, label.index()); }

  unsigned width() const { return width_; }
  std::uint32_t value() const { return value_; }
  /// 1-based, left to right.
  int bit(unsigned position) const;
  std::string str() const;

  friend GhzLabel operator^(const GhzLabel& a, const GhzLabel& b);
  friend auto operator<=>(const GhzLabel&, const GhzLabel&) = default;

 private:
  unsigned width_ = 0;
  std::uint32_t value_ = 0;
};

enum class PauliAxis { z, x, y };

std::string_view to_string(PauliAxis axis);
PauliAxis parse_axis(std::string_view text);

}  // namespace esqkd
