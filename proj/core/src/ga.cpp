#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

Population ga_generation(Population pop, const EvaluationContext& ctx, const MoeaParams& params,
                         RngStream& rng) {
  const std::size_t p = pop.size();
  if (p == 0) throw ArgumentError("ga_generation: empty population");

  auto tournament = [&] {
    const std::size_t a = static_cast<std::size_t>(rng.below(p));
    const std::size_t b = static_cast<std::size_t>(rng.below(p));
    const double fa = pop[a].objectives()[0], fb = pop[b].objectives()[0];
    if (fa != fb) return fa > fb ? a : b;
    return std::min(a, b);
  };
  std::vector<std::size_t> pool(p);
  for (auto& slot : pool) slot = tournament();

  const std::size_t elite = best_index(pop);
  auto children = make_offspring(pop, pool, p - 1, params, rng);
  Population offspring = evaluate_genomes(std::move(children), ctx, params.workers);

  Population next;
  next.reserve(p);
  next.push_back(std::move(pop[elite]));
  for (auto& ind : offspring) next.push_back(std::move(ind));
  return next;
}

}  // namespace mofs
