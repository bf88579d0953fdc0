#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mofs/rng.hpp"

namespace mofs {

/// Fixed-length bitstring; bit i set means feature i is selected.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::size_t n) : bits_(n, 0) {}
  explicit Genome(std::vector<std::uint8_t> bits);

  /// Parses a "0101..." string. Throws ParseError on other characters.
  static Genome from_string(std::string_view text);
  static Genome full(std::size_t n);

  std::size_t length() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool on = true) { bits_[i] = on ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  /// Number of selected features.
  std::size_t size() const;
  bool empty_selection() const { return size() == 0; }
  std::vector<std::size_t> selected() const;
  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  auto operator<=>(const Genome&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Each bit Bernoulli(0.5). Throws ArgumentError for n == 0.
Genome random_init(std::size_t n, RngStream& rng);

/// Child 1 takes each bit from a uniformly chosen parent; child 2 takes the
/// bit from the other parent.
std::pair<Genome, Genome> uniform_crossover(const Genome& p1, const Genome& p2, RngStream& rng);

/// Flips each bit independently with probability 1/n.
Genome bitflip_mutation(const Genome& g, RngStream& rng);

/// Sets one uniformly chosen bit of an all-zero genome; identity otherwise.
Genome repair_empty(const Genome& g, RngStream& rng);

}  // namespace mofs
