#pragma once

// Evolutionary search engines (NSGA-II, NSGA-III, MOEA/D and a
// single-objective GA) over feature-subset genomes, with the shared
// selection machinery and a hypervolume indicator.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mofs/genotype.hpp"
#include "mofs/objectives.hpp"
#include "mofs/rng.hpp"

namespace mofs {

enum class Algorithm { nsga2, nsga3, moead, ga };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct Individual {
  Genome genome;
  Evaluation eval;
  std::optional<std::size_t> rank;
  std::optional<double> crowding;

  const ObjectiveVector& objectives() const { return eval.objectives; }
};

using Population = std::vector<Individual>;
using FrontPartition = std::vector<std::vector<std::size_t>>;

struct MoeaParams {
  std::size_t population = 100;
  std::size_t generations = 500;
  double crossover_prob = 0.9;
  double mutation_prob = 1.0;
  /// Threads used for offspring evaluation. Results do not depend on it.
  std::size_t workers = 1;
  /// NSGA-III lattice divisions; 0 picks 13 for three objectives and P - 1
  /// for two.
  std::size_t nsga3_divisions = 0;
  /// NSGA-III reference-point dimension; 0 means "same as the formulation".
  std::size_t reference_dimension = 0;
  /// MOEA/D neighborhood size T.
  std::size_t moead_neighbors = 20;
  /// MOEA/D lattice divisions; 0 picks the smallest lattice with >= P points.
  std::size_t moead_divisions = 0;
  /// Keep a cross-generation archive of every evaluated individual and
  /// return it instead of the final population's nondominated set.
  bool external_archive = false;

  void validate() const;
};

/// Fronts of a maximization point set; front 0 is the nondominated set.
/// Indices within each front are ascending. Throws ArgumentError on mixed
/// arity.
FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of each member of `front` (indices into `points`),
/// returned in the order of `front`.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> points,
                                      std::span<const std::size_t> front);

/// Das-Dennis simplex lattice: all vectors (k_1/p, ..., k_M/p) with
/// non-negative integers k_i summing to p.
std::vector<ObjectiveVector> das_dennis_points(std::size_t divisions, std::size_t dimension);

/// max_i w_i * |z_i - f_i|, zero weights replaced by 1e-6. Lower is better.
double tchebycheff(std::span<const double> f, std::span<const double> w,
                   std::span<const double> z);

/// Weight vectors and their T nearest neighbors (Euclidean, self included).
struct Decomposition {
  std::vector<ObjectiveVector> weights;
  std::vector<std::vector<std::size_t>> neighbors;
};

Decomposition make_decomposition(std::size_t divisions, std::size_t dimension,
                                 std::size_t neighborhood);

/// Componentwise best objective values seen so far (maximization).
class IdealPoint {
 public:
  IdealPoint() = default;
  explicit IdealPoint(std::size_t dimension);

  void update(std::span<const double> f);
  const ObjectiveVector& values() const { return values_; }

 private:
  ObjectiveVector values_;
};

/// Mutually nondominated individuals, unique by bitstring.
class ParetoArchive {
 public:
  /// Returns true if the individual entered the archive.
  bool insert(const Individual& ind);

  const std::vector<Individual>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

 private:
  std::vector<Individual> members_;
};

/// Nondominated members of a population, first occurrence per bitstring,
/// in population order.
ParetoArchive nondominated_archive(const Population& pop);

/// Sets rank (front index) and crowding distance on every member.
void assign_rank_and_crowding(Population& pop);

/// NSGA-II survivor selection: whole fronts, then the split front by
/// descending crowding distance (ties to the lower index). Returns the
/// chosen indices.
std::vector<std::size_t> nsga2_select(std::span<const ObjectiveVector> points, std::size_t count);

/// Per-pick record of NSGA-III niching, for diagnostics.
struct NichingTrace {
  std::vector<std::size_t> direction;
  std::vector<std::size_t> count_at_pick;
  /// Smallest niche count among directions that still had candidates.
  std::vector<std::size_t> min_available_count;
};

/// NSGA-III survivor selection against the given reference directions.
std::vector<std::size_t> nsga3_select(std::span<const ObjectiveVector> points, std::size_t count,
                                      std::span<const ObjectiveVector> references, RngStream& rng,
                                      NichingTrace* trace = nullptr);

/// Normalized objectives (minimization form, ideal at the origin) as used
/// by NSGA-III association, for the given subset of points.
std::vector<ObjectiveVector> nsga3_normalize(std::span<const ObjectiveVector> points,
                                             std::span<const std::size_t> subset);

/// Binary tournament by (rank, crowding), ties to the lower index.
std::size_t crowded_tournament(const Population& pop, RngStream& rng);

/// Mates consecutive pool members: crossover with probability p_c (else
/// copies), mutation with probability p_m, then empty-subset repair.
/// Returns exactly `count` children.
std::vector<Genome> make_offspring(const Population& pop, std::span<const std::size_t> pool,
                                   std::size_t count, const MoeaParams& params, RngStream& rng);

Population evaluate_genomes(std::vector<Genome> genomes, const EvaluationContext& ctx,
                            std::size_t workers);

Population nsga2_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, RngStream& rng);

Population nsga3_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, std::span<const ObjectiveVector> references,
                            RngStream& variation_rng, RngStream& niching_rng,
                            NichingTrace* trace = nullptr);

struct MoeadState {
  Decomposition decomposition;
  IdealPoint ideal;
};

Population moead_generation(Population pop, const EvaluationContext& ctx,
                            const MoeaParams& params, MoeadState& state, RngStream& rng);

/// Single-objective generation: tournament on the scalar fitness,
/// generational replacement keeping the best individual.
Population ga_generation(Population pop, const EvaluationContext& ctx, const MoeaParams& params,
                         RngStream& rng);

/// Index of the best scalar-fitness individual (lowest index on ties).
std::size_t best_index(const Population& pop);

struct ProgressRecord {
  std::size_t generation = 0;
  double best_accuracy = 0.0;
  double best_detection_rate = 0.0;
  std::size_t min_size = 0;
  std::size_t archive_size = 0;
  std::size_t evaluations = 0;
};

struct SearchResult {
  ParetoArchive archive;
  Population final_population;
  std::vector<ProgressRecord> progress;
};

using ProgressCallback = std::function<void(const ProgressRecord&)>;

/// Runs G generations from a random initial population. Throws ConfigError
/// when the algorithm does not fit the context's formulation.
SearchResult run(Algorithm algorithm, const EvaluationContext& ctx, const MoeaParams& params,
                 std::uint64_t master_seed, const ProgressCallback& on_progress = {});

/// Lebesgue measure dominated by `points` above `reference` (maximization),
/// for 1 to 3 objectives. Throws ArgumentError when a point lies below the
/// reference in some coordinate.
double hypervolume(std::span<const ObjectiveVector> points, std::span<const double> reference);

}  // namespace mofs
