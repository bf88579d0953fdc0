// mofs: command-line front end.
//
//   mofs run      --config cfg.json [overrides]     evolutionary search
//   mofs baseline --method sfs|rfe|pca|basic ...    comparison methods
//   mofs report   DIR... --primary LABEL --out DIR  mean/std table
//   mofs project  DIR... --out DIR                  2D projection CSVs
//   mofs prepare  --train F --test F --out DIR      preprocessed CSV cache

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mofs/errors.hpp"
#include "mofs/experiment.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> dataset;
  std::optional<std::string> train;
  std::optional<std::string> test;
  std::optional<std::string> method;
  std::optional<std::string> label;
  std::optional<std::string> formulation;
  std::optional<std::string> classifier;
  std::optional<std::size_t> pop;
  std::optional<std::size_t> gens;
  std::optional<double> pc;
  std::optional<double> pm;
  std::optional<std::size_t> repeats;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> subsample;
  std::optional<std::size_t> test_subsample;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> repeat_workers;
  std::optional<std::string> out;
  std::vector<std::size_t> grid;
  bool quiet = false;
};

void add_common(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON configuration file");
  cmd.add_option("--preset", o.preset, "parameter preset: paper or desk");
  cmd.add_option("--dataset", o.dataset, "built-in layout: nsl-kdd or unsw-nb15");
  cmd.add_option("--train", o.train, "training CSV file");
  cmd.add_option("--test", o.test, "test CSV file");
  cmd.add_option("--label", o.label, "method name used in reports");
  cmd.add_option("--formulation", o.formulation, "DR3, ACC2, F12 or ACC1");
  cmd.add_option("--classifier", o.classifier, "cart, logreg or forest");
  cmd.add_option("--repeats", o.repeats, "independent repeats");
  cmd.add_option("--seed", o.seed, "master seed");
  cmd.add_option("--subsample", o.subsample, "maximum training rows (stratified)");
  cmd.add_option("--test-subsample", o.test_subsample, "maximum test rows (stratified)");
  cmd.add_option("--workers", o.workers, "evaluation threads per repeat");
  cmd.add_option("--repeat-workers", o.repeat_workers, "repeats run concurrently");
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_flag("--quiet", o.quiet, "no progress output");
}

mofs::ExperimentConfig build_config(const Overrides& o) {
  mofs::ExperimentConfig cfg;
  if (o.config) cfg = mofs::load_config(*o.config);
  if (o.preset) mofs::apply_preset(cfg, *o.preset);
  if (o.dataset) cfg.dataset = mofs::builtin_spec(*o.dataset);
  if (o.train) cfg.train_path = *o.train;
  if (o.test) cfg.test_path = *o.test;
  if (o.method) cfg.method = mofs::parse_method(*o.method);
  if (o.label) cfg.label = *o.label;
  if (o.formulation) cfg.formulation = mofs::parse_formulation(*o.formulation);
  if (o.classifier) cfg.classifier.kind = mofs::parse_classifier_kind(*o.classifier);
  if (o.pop) cfg.moea.population = *o.pop;
  if (o.gens) cfg.moea.generations = *o.gens;
  if (o.pc) cfg.moea.crossover_prob = *o.pc;
  if (o.pm) cfg.moea.mutation_prob = *o.pm;
  if (o.repeats) cfg.repeats = *o.repeats;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.subsample) cfg.prepare.max_train_rows = *o.subsample;
  if (o.test_subsample) cfg.prepare.max_test_rows = *o.test_subsample;
  if (o.workers) cfg.moea.workers = *o.workers;
  if (o.repeat_workers) cfg.repeat_workers = *o.repeat_workers;
  if (o.out) cfg.output_dir = *o.out;
  if (!o.grid.empty()) cfg.baseline_grid = o.grid;
  cfg.validate();
  return cfg;
}

int execute(const mofs::ExperimentConfig& cfg, bool quiet) {
  const mofs::PreparedData data = mofs::prepare_for(cfg);
  if (!quiet)
    std::cerr << fmt::format("{}: {} train / {} validation / {} test rows, {} features\n",
                             cfg.dataset.name, data.train.row_count(), data.validation.row_count(),
                             data.test.row_count(), data.train.col_count());
  const auto results = mofs::run_experiment(cfg, data, [&](const mofs::RunResult& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    if (quiet) return;
    const auto& s = mofs::select_solution(r);
    std::cerr << fmt::format("{} repeat {}: archive {}, selected size {} acc {:.4f} DR {:.4f} ({:.1f}s)\n",
                             cfg.display_label(), r.repeat, r.archive.size(), s.size,
                             mofs::accuracy(s.test), mofs::detection_rate(s.test), r.wall_seconds);
  });
  mofs::write_results(cfg, results, cfg.output_dir);
  if (!quiet) std::cerr << "results written to " << cfg.output_dir.string() << '\n';
  return 0;
}

std::vector<mofs::MethodResults> load_all(const std::vector<std::string>& dirs) {
  std::vector<mofs::MethodResults> out;
  for (const auto& d : dirs) out.push_back(mofs::load_method_results(d));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective wrapper feature selection for intrusion detection"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "run an evolutionary feature-selection experiment");
  add_common(*run, run_opts);
  run->add_option("--algorithm", run_opts.method, "nsga2, nsga3, moead or ga");
  run->add_option("--pop", run_opts.pop, "population size");
  run->add_option("--gens", run_opts.gens, "generations");
  run->add_option("--pc", run_opts.pc, "crossover probability");
  run->add_option("--pm", run_opts.pm, "mutation probability");

  Overrides base_opts;
  auto* baseline = app.add_subcommand("baseline", "run a comparison method");
  add_common(*baseline, base_opts);
  baseline->add_option("--method", base_opts.method, "sfs, rfe, pca or basic")->required();
  baseline->add_option("--grid", base_opts.grid, "k values to try");

  std::vector<std::string> report_dirs;
  std::string report_out = "report";
  mofs::TableOptions table;
  auto* report = app.add_subcommand("report", "mean/std table with significance marks");
  report->add_option("dirs", report_dirs, "result directories")->required();
  report->add_option("--primary", table.primary, "method the others are compared against");
  report->add_option("--alpha", table.alpha, "significance level");
  report->add_option("--out", report_out, "output directory");

  std::vector<std::string> project_dirs;
  std::string project_out = "projection";
  auto* project = app.add_subcommand("project", "2D projection data of archives");
  project->add_option("dirs", project_dirs, "result directories")->required();
  project->add_option("--out", project_out, "output directory");

  Overrides prep_opts;
  auto* prepare = app.add_subcommand("prepare", "write the preprocessed train/validation/test CSVs");
  add_common(*prepare, prep_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (run_opts.method && !mofs::parse_method(*run_opts.method).is_search)
        throw mofs::ConfigError("use the baseline subcommand for " + *run_opts.method);
      const auto cfg = build_config(run_opts);
      if (!cfg.method.is_search) throw mofs::ConfigError("configured method is not a search algorithm");
      return execute(cfg, run_opts.quiet);
    }
    if (*baseline) {
      if (mofs::parse_method(*base_opts.method).is_search)
        throw mofs::ConfigError("use the run subcommand for " + *base_opts.method);
      return execute(build_config(base_opts), base_opts.quiet);
    }
    if (*report) {
      std::cout << mofs::export_table(load_all(report_dirs), table, report_out);
      return 0;
    }
    if (*project) {
      mofs::export_projection(load_all(project_dirs), project_out);
      return 0;
    }
    if (*prepare) {
      const auto cfg = build_config(prep_opts);
      mofs::write_prepared_cache(mofs::prepare_for(cfg), cfg.output_dir);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "mofs: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
