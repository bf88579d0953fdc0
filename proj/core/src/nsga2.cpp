#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

Population nsga2_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, RngStream& rng) {
  const std::size_t p = pop.size();
  if (p == 0) throw ArgumentError("nsga2_generation: empty population");
  if (!pop[0].rank) assign_rank_and_crowding(pop);

  std::vector<std::size_t> pool(p);
  for (auto& slot : pool) slot = crowded_tournament(pop, rng);
  auto children = make_offspring(pop, pool, p, params, rng);
  Population offspring = evaluate_genomes(std::move(children), ctx, params.workers);

  // Parents occupy indices [0, p), offspring [p, 2p).
  Population combined = std::move(pop);
  combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
  std::vector<ObjectiveVector> pts;
  pts.reserve(combined.size());
  for (const auto& ind : combined) pts.push_back(ind.objectives());

  Population next;
  next.reserve(p);
  for (std::size_t i : nsga2_select(pts, p)) next.push_back(std::move(combined[i]));
  assign_rank_and_crowding(next);
  return next;
}

}  // namespace mofs
