#pragma once

// Experiment configuration, orchestration over repeats, solution selection
// and result files.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mofs/baselines.hpp"
#include "mofs/classifiers.hpp"
#include "mofs/dataset.hpp"
#include "mofs/moea.hpp"
#include "mofs/objectives.hpp"

namespace mofs {

/// What a run executes: an evolutionary search or a baseline.
struct MethodChoice {
  bool is_search = true;
  Algorithm algorithm = Algorithm::nsga2;
  BaselineMethod baseline = BaselineMethod::basic;

  std::string name() const;
};

MethodChoice parse_method(std::string_view text);

struct ExperimentConfig {
  DatasetSpec dataset = nsl_kdd_spec();
  std::filesystem::path train_path;
  std::filesystem::path test_path;

  MethodChoice method;
  /// Display name in reports; defaults to the method name.
  std::string label;
  Formulation formulation = Formulation::dr3;
  TrainConfig classifier;
  MoeaParams moea;
  std::size_t repeats = 10;
  std::uint64_t master_seed = 1;
  /// Repeats executed concurrently; evaluation threads per repeat come from
  /// moea.workers.
  std::size_t repeat_workers = 1;
  PrepareOptions prepare;
  std::vector<std::size_t> baseline_grid{5, 10, 15, 20, 25};
  std::filesystem::path output_dir = "results";

  std::string display_label() const;
  /// Throws ConfigError when the method and formulation do not fit together
  /// or any parameter is out of range.
  void validate() const;
};

/// Named parameter presets: "paper" (full data, G = 500, 10 repeats) and
/// "desk" (stratified 10k training rows, G = 50, 5 repeats).
void apply_preset(ExperimentConfig& cfg, std::string_view preset);

/// Reads a JSON configuration file; relative paths resolve against the
/// file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);
/// Applies JSON keys on top of `cfg`.
void apply_config_text(ExperimentConfig& cfg, std::string_view json_text,
                       const std::filesystem::path& base_dir = {});
std::string config_to_json(const ExperimentConfig& cfg);

/// Seed of repeat `r` under `master`.
std::uint64_t repeat_seed(std::uint64_t master, std::size_t repeat);
/// Seed used for subsampling and the validation split.
std::uint64_t data_seed(std::uint64_t master);

struct ArchiveEntry {
  Genome genome;
  /// Subset size; for PCA the number of retained components.
  std::size_t size = 0;
  ObjectiveVector objectives;
  ConfusionMatrix validation;
  ConfusionMatrix test;

  bool operator==(const ArchiveEntry&) const = default;
};

struct RunResult {
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::vector<ArchiveEntry> archive;
  std::vector<ProgressRecord> progress;
  /// Baseline runs only: every evaluated k and skipped-k warnings.
  std::vector<BaselinePoint> grid;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Classifier configuration for the given repeat: the configured
/// hyperparameters with a seed derived from the repeat seed. The same value
/// is used during search and for the final test classifier.
TrainConfig run_classifier(const ExperimentConfig& cfg, std::size_t repeat);

/// Evaluates archive members on the test rows with a classifier trained on
/// train + validation.
std::vector<ArchiveEntry> score_archive(const ParetoArchive& archive, const PreparedData& data,
                                        const TrainConfig& classifier, std::size_t workers);

using RunObserver = std::function<void(const RunResult&)>;

/// Executes `cfg.repeats` independent runs on already prepared data.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, const PreparedData& data,
                                      const RunObserver& on_run = {});
/// Loads and prepares the configured dataset, then runs.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg);

PreparedData prepare_for(const ExperimentConfig& cfg);

/// Highest test accuracy; ties to higher detection rate, then smaller size,
/// then the lexicographically smallest bitstring. Throws InternalError on
/// an empty archive.
const ArchiveEntry& select_solution(const RunResult& result);
const ArchiveEntry& select_solution(const std::vector<ArchiveEntry>& archive);

// Result files in an output directory:
//   config.json                 effective configuration
//   run_NNN_archive.csv         one row per archive member
//   run_NNN_progress.jsonl      one JSON object per generation
//   run_NNN_grid.csv            baseline runs: test metrics per k
//   runs.csv                    selected solution per run
//   timing.json                 wall-clock seconds per run
void write_results(const ExperimentConfig& cfg, const std::vector<RunResult>& results,
                   const std::filesystem::path& dir);
void write_archive_csv(const std::vector<ArchiveEntry>& archive, const std::filesystem::path& path);
std::vector<ArchiveEntry> read_archive_csv(const std::filesystem::path& path);
void write_progress_jsonl(const std::vector<ProgressRecord>& progress,
                          const std::filesystem::path& path);

/// Selected solution of one repeat, as used in tables.
struct SelectedMetrics {
  double size = 0.0;
  double accuracy = 0.0;
  double detection_rate = 0.0;
  double f1 = 0.0;
};

/// Everything the report and projection exporters need about one method
/// result directory.
struct MethodResults {
  std::string label;
  std::string method;
  std::string classifier;
  std::size_t feature_count = 0;
  std::vector<std::vector<ArchiveEntry>> runs;

  std::vector<SelectedMetrics> selected() const;
};

MethodResults load_method_results(const std::filesystem::path& dir);

/// "86.86±0.65" style cell: value and std scaled by `scale`, fixed decimals.
std::string format_mean_std(double mean, double stddev, int decimals, double scale = 1.0);

struct TableOptions {
  std::string primary;
  double alpha = 0.05;
};

/// Writes table.csv and table.txt: per method and classifier, mean±std of
/// size, accuracy and detection rate over repeats, significance marks
/// against the primary method and win/tie/loss counts by mean. Returns the
/// text table.
std::string export_table(const std::vector<MethodResults>& methods, const TableOptions& options,
                         const std::filesystem::path& out_dir);

/// Writes projection_reduction_accuracy.csv, projection_reduction_dr.csv
/// and projection_accuracy_dr.csv with one row per archive member.
void export_projection(const std::vector<MethodResults>& methods,
                       const std::filesystem::path& out_dir);

}  // namespace mofs
