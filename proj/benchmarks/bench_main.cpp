#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "mofs/classifiers.hpp"
#include "mofs/moea.hpp"
#include "mofs/rng.hpp"

namespace {

mofs::FeatureTable random_table(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  mofs::RngStream rng(seed);
  std::vector<double> values(rows * cols);
  std::vector<std::uint8_t> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) values[r * cols + c] = rng.uniform01();
    labels[r] = values[r * cols] + values[r * cols + 1] > 1.0 ? 1 : 0;
  }
  return mofs::FeatureTable(rows, cols, std::move(values), std::move(labels));
}

std::vector<mofs::ObjectiveVector> random_points(std::size_t n, std::size_t m, std::uint64_t seed) {
  mofs::RngStream rng(seed);
  std::vector<mofs::ObjectiveVector> pts(n, mofs::ObjectiveVector(m));
  for (auto& p : pts)
    for (auto& x : p) x = rng.uniform01();
  return pts;
}

void BM_TrainCart(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 41, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mofs::train_cart(table, mofs::CartParams{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainCart)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TrainLogReg(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 41, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mofs::train_logreg(table, mofs::LogRegParams{}));
}
BENCHMARK(BM_TrainLogReg)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  auto train = std::make_shared<const mofs::FeatureTable>(random_table(8000, 41, 3));
  auto validation = std::make_shared<const mofs::FeatureTable>(random_table(2000, 41, 4));
  mofs::RngStream rng(5);
  std::vector<mofs::Genome> genomes;
  for (int i = 0; i < 64; ++i) genomes.push_back(mofs::repair_empty(mofs::random_init(41, rng), rng));
  for (auto _ : state) {
    const mofs::EvaluationContext ctx(train, validation, mofs::TrainConfig{}, mofs::Formulation::dr3);
    benchmark::DoNotOptimize(ctx.evaluate_batch(genomes, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(genomes.size()));
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NondominatedSort(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(mofs::fast_nondominated_sort(pts));
}
BENCHMARK(BM_NondominatedSort)->Arg(200)->Arg(1000);

void BM_Nsga3Select(benchmark::State& state) {
  const auto pts = random_points(200, 3, 7);
  const auto refs = mofs::das_dennis_points(13, 3);
  for (auto _ : state) {
    mofs::RngStream rng(8);
    benchmark::DoNotOptimize(mofs::nsga3_select(pts, 100, refs, rng));
  }
}
BENCHMARK(BM_Nsga3Select);

void BM_Hypervolume3D(benchmark::State& state) {
  auto pts = random_points(static_cast<std::size_t>(state.range(0)), 3, 9);
  const std::vector<double> ref{0.0, 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(mofs::hypervolume(pts, ref));
}
BENCHMARK(BM_Hypervolume3D)->Arg(50)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
