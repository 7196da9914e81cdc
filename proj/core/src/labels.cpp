#include "esqkd/labels.hpp"

#include "esqkd/error.hpp"

namespace esqkd {

BellLabel BellLabel::parse(std::string_view text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') ||
      (text[1] != '0' && text[1] != '1')) {
    throw InvalidArgument("invalid Bell label '" + std::string(text) + "'");
  }
  return BellLabel(text[0] - '0', text[1] - '0');
}

int BellLabel::bit(int position) const {
  if (position == 1) return high();
  if (position == 2) return low();
  throw InvalidArgument("Bell label bit position must be 1 or 2");
}

std::string BellLabel::str() const {
  return {static_cast<char>('0' + high()), static_cast<char>('0' + low())};
}

GhzLabel::GhzLabel(unsigned width, std::uint32_t value) : width_(width), value_(value) {
  if (width < 2 || width > 31) {
    throw InvalidArgument("GHZ label width must be in [2, 31]");
  }
  if ((value >> width) != 0) {
    throw InvalidArgument("GHZ label value does not fit its width");
  }
}

GhzLabel GhzLabel::parse(std::string_view text) {
  std::uint32_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("invalid GHZ label '" + std::string(text) + "'");
    }
    value = (value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return GhzLabel(static_cast<unsigned>(text.size()), value);
}

int GhzLabel::bit(unsigned position) const {
  if (position < 1 || position > width_) {
    throw InvalidArgument("GHZ label bit position out of range");
  }
  return static_cast<int>((value_ >> (width_ - position)) & 1u);
}

std::string GhzLabel::str() const {
  std::string out(width_, '0');
  for (unsigned i = 0; i < width_; ++i) {
    if ((value_ >> (width_ - 1 - i)) & 1u) out[i] = '1';
  }
  return out;
}

GhzLabel operator^(const GhzLabel& a, const GhzLabel& b) {
  if (a.width_ != b.width_) throw InvalidArgument("GHZ label widths differ");
  return GhzLabel(a.width_, a.value_ ^ b.value_);
}

std::string_view to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::z: return "z";
    case PauliAxis::x: return "x";
    case PauliAxis::y: return "y";
  }
  return "?";
}

PauliAxis parse_axis(std::string_view text) {
  if (text == "z") return PauliAxis::z;
  if (text == "x") return PauliAxis::x;
  if (text == "y") return PauliAxis::y;
  throw InvalidArgument("unknown Pauli axis '" + std::string(text) + "'");
}

}  // namespace esqkd
