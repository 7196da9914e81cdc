#include "esqkd/random.hpp"

#include "esqkd/error.hpp"

namespace esqkd {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq words{
      static_cast<std::uint32_t>(seed & 0xffffffffu),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream_id & 0xffffffffu),
      static_cast<std::uint32_t>(stream_id >> 32),
  };
  return std::mt19937_64(words);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RandomSource::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("RandomSource::below requires a nonzero bound");
  // Reject the biased tail so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    const std::uint64_t draw = next_u64();
    if (draw <= limit) return draw % bound;
  }
}

}  // namespace esqkd
