#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

Population moead_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, MoeadState& state, RngStream& rng) {
  const auto& weights = state.decomposition.weights;
  const auto& neighbors = state.decomposition.neighbors;
  const std::size_t n = pop.size();
  if (n != weights.size())
    throw ArgumentError("moead_generation: population size must equal the weight count");

  // Children are bred from the population as it stood at the start of the
  // generation, so evaluation can run in parallel; replacement below is
  // applied in subproblem order.
  std::vector<Genome> children;
  children.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& hood = neighbors[i];
    std::size_t a = hood[0], b = hood[0];
    if (hood.size() >= 2) {
      const std::size_t x = static_cast<std::size_t>(rng.below(hood.size()));
      std::size_t y = static_cast<std::size_t>(rng.below(hood.size() - 1));
      if (y >= x) ++y;
      a = hood[x];
      b = hood[y];
    }
    Genome child;
    if (rng.bernoulli(params.crossover_prob))
      child = uniform_crossover(pop[a].genome, pop[b].genome, rng).first;
    else
      child = pop[a].genome;
    if (rng.bernoulli(params.mutation_prob)) child = bitflip_mutation(child, rng);
    children.push_back(repair_empty(child, rng));
  }
  Population offspring = evaluate_genomes(std::move(children), ctx, params.workers);

  for (std::size_t i = 0; i < n; ++i) {
    const Individual& child = offspring[i];
    state.ideal.update(child.objectives());
    const auto& z = state.ideal.values();
    for (std::size_t j : neighbors[i]) {
      if (tchebycheff(child.objectives(), weights[j], z) <
          tchebycheff(pop[j].objectives(), weights[j], z))
        pop[j] = child;
    }
  }
  return pop;
}

}  // namespace mofs
