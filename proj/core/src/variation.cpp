#include <tuple>

#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

std::size_t crowded_tournament(const Population& pop, RngStream& rng) {
  const std::size_t a = static_cast<std::size_t>(rng.below(pop.size()));
  const std::size_t b = static_cast<std::size_t>(rng.below(pop.size()));
  const auto& x = pop[a];
  const auto& y = pop[b];
  const std::size_t rx = x.rank.value_or(0), ry = y.rank.value_or(0);
  if (rx != ry) return rx < ry ? a : b;
  const double cx = x.crowding.value_or(0.0), cy = y.crowding.value_or(0.0);
  if (cx != cy) return cx > cy ? a : b;
  return std::min(a, b);
}

std::vector<Genome> make_offspring(const Population& pop, std::span<const std::size_t> pool,
                                   std::size_t count, const MoeaParams& params, RngStream& rng) {
  if (pool.empty()) throw ArgumentError("make_offspring: empty mating pool");
  std::vector<Genome> children;
  children.reserve(count + 1);
  for (std::size_t i = 0; children.size() < count; i += 2) {
    const Genome& p1 = pop[pool[i % pool.size()]].genome;
    const Genome& p2 = pop[pool[(i + 1) % pool.size()]].genome;
    Genome c1, c2;
    if (rng.bernoulli(params.crossover_prob)) {
      std::tie(c1, c2) = uniform_crossover(p1, p2, rng);
    } else {
      c1 = p1;
      c2 = p2;
    }
    for (Genome* c : {&c1, &c2}) {
      if (rng.bernoulli(params.mutation_prob)) *c = bitflip_mutation(*c, rng);
      *c = repair_empty(*c, rng);
    }
    children.push_back(std::move(c1));
    if (children.size() < count) children.push_back(std::move(c2));
  }
  return children;
}

Population evaluate_genomes(std::vector<Genome> genomes, const EvaluationContext& ctx,
                            std::size_t workers) {
  auto evals = ctx.evaluate_batch(genomes, workers);
  Population pop(genomes.size());
  for (std::size_t i = 0; i < genomes.size(); ++i) {
    pop[i].genome = std::move(genomes[i]);
    pop[i].eval = std::move(evals[i]);
  }
  return pop;
}

std::size_t best_index(const Population& pop) {
  if (pop.empty()) throw ArgumentError("best_index: empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].objectives()[0] > pop[best].objectives()[0]) best = i;
  return best;
}

}  // namespace mofs
