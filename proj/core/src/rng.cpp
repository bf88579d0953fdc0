#include "mofs/rng.hpp"

#include <limits>

#include "mofs/errors.hpp"

namespace mofs {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t generation,
                     std::uint64_t slot) {
  std::uint64_t s = derive_seed(derive_seed(master_seed, generation), slot);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(generation),
                    static_cast<std::uint32_t>(slot)};
  engine_.seed(seq);
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("RngStream::below: bound must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

bool RngStream::bernoulli(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01() < p;
}

}  // namespace mofs
