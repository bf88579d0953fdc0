#include "mofs/genotype.hpp"

#include <algorithm>

#include "mofs/errors.hpp"

namespace mofs {

Genome::Genome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_)
    if (b > 1) throw ArgumentError("Genome: bits must be 0 or 1");
}

Genome Genome::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw ParseError("genome string must contain only 0 and 1");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Genome(std::move(bits));
}

Genome Genome::full(std::size_t n) { return Genome(std::vector<std::uint8_t>(n, 1)); }

std::size_t Genome::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Genome::selected() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) idx.push_back(i);
  return idx;
}

std::string Genome::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

Genome random_init(std::size_t n, RngStream& rng) {
  if (n == 0) throw ArgumentError("random_init: genome length must be positive");
  Genome g(n);
  for (std::size_t i = 0; i < n; ++i) g.set(i, rng.coin());
  return g;
}

std::pair<Genome, Genome> uniform_crossover(const Genome& p1, const Genome& p2, RngStream& rng) {
  if (p1.length() != p2.length()) throw ArgumentError("uniform_crossover: length mismatch");
  Genome c1(p1.length()), c2(p1.length());
  for (std::size_t i = 0; i < p1.length(); ++i) {
    const bool from_first = rng.coin();
    c1.set(i, from_first ? p1.test(i) : p2.test(i));
    c2.set(i, from_first ? p2.test(i) : p1.test(i));
  }
  return {std::move(c1), std::move(c2)};
}

Genome bitflip_mutation(const Genome& g, RngStream& rng) {
  Genome out = g;
  const std::size_t n = g.length();
  if (n == 0) return out;
  const double p = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.bernoulli(p)) out.flip(i);
  return out;
}

Genome repair_empty(const Genome& g, RngStream& rng) {
  if (g.length() == 0 || !g.empty_selection()) return g;
  Genome out = g;
  out.set(static_cast<std::size_t>(rng.below(g.length())));
  return out;
}

}  // namespace mofs
