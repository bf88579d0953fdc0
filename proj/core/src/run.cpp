#include <algorithm>

#include <fmt/format.h>

#include "mofs/errors.hpp"
#include "mofs/moea.hpp"

namespace mofs {

namespace {

constexpr std::uint64_t kVariationSlot = 0;
constexpr std::uint64_t kNichingSlot = 1;

std::size_t lattice_size(std::size_t divisions, std::size_t dimension) {
  // C(divisions + dimension - 1, dimension - 1)
  std::size_t r = 1;
  for (std::size_t i = 1; i < dimension; ++i) r = r * (divisions + i) / i;
  return r;
}

std::size_t divisions_for(std::size_t population, std::size_t dimension) {
  if (dimension == 2) return std::max<std::size_t>(population - 1, 1);
  std::size_t h = 1;
  while (lattice_size(h, dimension) < population) ++h;
  return h;
}

ProgressRecord make_progress(const Population& pop, std::size_t generation,
                             const EvaluationContext& ctx) {
  ProgressRecord rec;
  rec.generation = generation;
  rec.min_size = pop.empty() ? 0 : pop[0].eval.size;
  for (const auto& ind : pop) {
    rec.best_accuracy = std::max(rec.best_accuracy, accuracy(ind.eval.validation));
    rec.best_detection_rate = std::max(rec.best_detection_rate, detection_rate(ind.eval.validation));
    rec.min_size = std::min(rec.min_size, ind.eval.size);
  }
  rec.archive_size = nondominated_archive(pop).size();
  rec.evaluations = ctx.cache_size();
  return rec;
}

}  // namespace

SearchResult run(Algorithm algorithm, const EvaluationContext& ctx, const MoeaParams& params,
                 std::uint64_t master_seed, const ProgressCallback& on_progress) {
  params.validate();
  const std::size_t m = arity(ctx.formulation());
  if (algorithm == Algorithm::ga && m != 1)
    throw ConfigError("the single-objective GA requires the ACC1 formulation");
  if (algorithm != Algorithm::ga && m < 2)
    throw ConfigError(fmt::format("{} requires a formulation with at least two objectives",
                                  to_string(algorithm)));
  if (algorithm == Algorithm::nsga3 && params.reference_dimension != 0 &&
      params.reference_dimension != m)
    throw ConfigError(fmt::format("NSGA-III reference dimension {} does not match {} objectives",
                                  params.reference_dimension, m));

  std::size_t pop_size = params.population;
  std::vector<ObjectiveVector> references;
  MoeadState moead;
  if (algorithm == Algorithm::nsga3) {
    const std::size_t h = params.nsga3_divisions ? params.nsga3_divisions : divisions_for(pop_size, m);
    references = das_dennis_points(h, m);
  } else if (algorithm == Algorithm::moead) {
    const std::size_t h = params.moead_divisions ? params.moead_divisions : divisions_for(pop_size, m);
    moead.decomposition = make_decomposition(h, m, params.moead_neighbors);
    pop_size = moead.decomposition.weights.size();
    moead.ideal = IdealPoint(m);
  }

  SearchResult result;
  const std::size_t n = ctx.feature_count();
  RngStream init_rng(master_seed, 0, kVariationSlot);
  std::vector<Genome> genomes;
  genomes.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i)
    genomes.push_back(repair_empty(random_init(n, init_rng), init_rng));
  Population pop = evaluate_genomes(std::move(genomes), ctx, params.workers);
  if (algorithm == Algorithm::nsga2) assign_rank_and_crowding(pop);
  if (algorithm == Algorithm::moead)
    for (const auto& ind : pop) moead.ideal.update(ind.objectives());

  ParetoArchive external;
  auto observe = [&](std::size_t generation) {
    if (params.external_archive)
      for (const auto& ind : pop) external.insert(ind);
    result.progress.push_back(make_progress(pop, generation, ctx));
    if (on_progress) on_progress(result.progress.back());
  };
  observe(0);

  for (std::size_t g = 1; g <= params.generations; ++g) {
    RngStream rng(master_seed, g, kVariationSlot);
    switch (algorithm) {
      case Algorithm::nsga2:
        pop = nsga2_generation(std::move(pop), ctx, params, rng);
        break;
      case Algorithm::nsga3: {
        RngStream niching(master_seed, g, kNichingSlot);
        pop = nsga3_generation(std::move(pop), ctx, params, references, rng, niching);
        break;
      }
      case Algorithm::moead:
        pop = moead_generation(std::move(pop), ctx, params, moead, rng);
        break;
      case Algorithm::ga:
        pop = ga_generation(std::move(pop), ctx, params, rng);
        break;
    }
    observe(g);
  }

  if (params.external_archive) {
    result.archive = std::move(external);
  } else if (algorithm == Algorithm::ga) {
    result.archive.insert(pop[best_index(pop)]);
  } else {
    result.archive = nondominated_archive(pop);
  }
  result.final_population = std::move(pop);
  return result;
}

}  // namespace mofs
