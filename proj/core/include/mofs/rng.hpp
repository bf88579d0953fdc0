#pragma once

#include <cstdint>
#include <random>

namespace mofs {

/// Mixes a 64-bit value (SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and an index. Used to build the
/// master -> repeat -> generation -> slot hierarchy.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// Deterministic random stream keyed by (master_seed, generation, slot).
///
/// All sampling helpers are implemented on top of the raw 64-bit engine
/// output so results do not depend on the standard library's distribution
/// implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t master_seed, std::uint64_t generation = 0,
                     std::uint64_t slot = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mofs
