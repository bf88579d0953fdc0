#include "mofs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "mofs/errors.hpp"
#include "mofs/parallel.hpp"

namespace mofs {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kClassifierSeedIndex = 0xC1A55EEDULL;

std::string run_stem(std::size_t repeat) { return fmt::format("run_{:03}", repeat); }

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory {}: {}", dir.string(), ec.message()));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  return out;
}

// Empty cell when the metric is undefined for these counts.
template <class Metric>
std::string metric_cell(Metric metric, const ConfusionMatrix& cm) {
  try {
    return fmt::format("{}", metric(cm));
  } catch (const UndefinedMetricError&) {
    return "";
  }
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(fmt::format("expected a count, got '{}'", s), line);
  return v;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(fmt::format("expected a number, got '{}'", s), line);
  return v;
}

constexpr const char* kArchiveHeader =
    "bitstring,size,val_accuracy,val_detection_rate,val_f1,"
    "test_accuracy,test_detection_rate,test_f1,"
    "val_tp,val_fp,val_tn,val_fn,test_tp,test_fp,test_tn,test_fn,objectives";

std::vector<ArchiveEntry> score_members(const ParetoArchive& archive, const FeatureTable& final_train,
                                        const FeatureTable& test, const TrainConfig& classifier,
                                        std::size_t workers) {
  const auto& members = archive.members();
  std::vector<ArchiveEntry> out(members.size());
  parallel_for(members.size(), workers, [&](std::size_t i) {
    out[i].genome = members[i].genome;
    out[i].size = members[i].eval.size;
    out[i].objectives = members[i].eval.objectives;
    out[i].validation = members[i].eval.validation;
    out[i].test = score_subset(final_train, test, members[i].genome, classifier);
  });
  return out;
}

RunResult run_search(const ExperimentConfig& cfg, const PreparedData& data,
                     const std::shared_ptr<const FeatureTable>& train,
                     const std::shared_ptr<const FeatureTable>& validation,
                     const FeatureTable& final_train, std::size_t repeat) {
  RunResult result;
  result.repeat = repeat;
  result.seed = repeat_seed(cfg.master_seed, repeat);
  const TrainConfig clf = run_classifier(cfg, repeat);
  // The context sees only training and validation rows.
  const EvaluationContext ctx(train, validation, clf, cfg.formulation);
  SearchResult search = run(cfg.method.algorithm, ctx, cfg.moea, result.seed);
  result.progress = std::move(search.progress);

  result.archive = score_members(search.archive, final_train, data.test, clf, cfg.moea.workers);
  return result;
}

RunResult run_baseline(const ExperimentConfig& cfg, const PreparedData& data,
                       const std::shared_ptr<const FeatureTable>& train,
                       const std::shared_ptr<const FeatureTable>& validation,
                       const FeatureTable& final_train, std::size_t repeat) {
  RunResult result;
  result.repeat = repeat;
  result.seed = repeat_seed(cfg.master_seed, repeat);
  const TrainConfig clf = run_classifier(cfg, repeat);
  const Formulation f = arity(cfg.formulation) >= 2 ? cfg.formulation : Formulation::dr3;
  const EvaluationContext ctx(train, validation, clf, f);
  const BaselineInputs inputs{ctx, final_train, data.test};
  BaselineResult br = run_baseline_grid(cfg.method.baseline, inputs, cfg.baseline_grid);

  ArchiveEntry e;
  e.size = br.best.k;
  e.test = br.best.test;
  if (br.best.genome) {
    e.genome = *br.best.genome;
    const Evaluation ev = ctx.evaluate_full(e.genome);
    e.objectives = ev.objectives;
    e.validation = ev.validation;
  }
  result.archive.push_back(std::move(e));
  result.grid = std::move(br.grid);
  result.warnings = std::move(br.warnings);
  return result;
}

}  // namespace

TrainConfig run_classifier(const ExperimentConfig& cfg, std::size_t repeat) {
  TrainConfig c = cfg.classifier;
  c.seed = derive_seed(repeat_seed(cfg.master_seed, repeat), kClassifierSeedIndex);
  return c;
}

std::vector<ArchiveEntry> score_archive(const ParetoArchive& archive, const PreparedData& data,
                                        const TrainConfig& classifier, std::size_t workers) {
  return score_members(archive, data.full_train(), data.test, classifier, workers);
}

PreparedData prepare_for(const ExperimentConfig& cfg) {
  if (cfg.train_path.empty() || cfg.test_path.empty())
    throw ConfigError("training and test file paths are required");
  PrepareOptions opts = cfg.prepare;
  opts.seed = data_seed(cfg.master_seed);
  return prepare_files(cfg.dataset, cfg.train_path, cfg.test_path, opts);
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, const PreparedData& data,
                                      const RunObserver& on_run) {
  cfg.validate();
  if (data.validation.count_label(1) == 0)
    throw ConfigError("the validation rows contain no attacks; detection rate is undefined");
  auto train = std::make_shared<const FeatureTable>(data.train);
  auto validation = std::make_shared<const FeatureTable>(data.validation);
  const FeatureTable final_train = data.full_train();

  std::vector<RunResult> results(cfg.repeats);
  std::mutex observer_mutex;
  parallel_for(cfg.repeats, cfg.repeat_workers, [&](std::size_t r) {
    const auto start = std::chrono::steady_clock::now();
    try {
      results[r] = cfg.method.is_search
                       ? run_search(cfg, data, train, validation, final_train, r)
                       : run_baseline(cfg, data, train, validation, final_train, r);
    } catch (const std::exception& e) {
      throw RunError(r, e.what());
    }
    results[r].wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_run) {
      std::lock_guard lock(observer_mutex);
      on_run(results[r]);
    }
  });
  return results;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, prepare_for(cfg));
}

const ArchiveEntry& select_solution(const std::vector<ArchiveEntry>& archive) {
  if (archive.empty()) throw InternalError("select_solution: empty archive");
  auto better = [](const ArchiveEntry& a, const ArchiveEntry& b) {
    const double acc_a = accuracy(a.test), acc_b = accuracy(b.test);
    if (acc_a != acc_b) return acc_a > acc_b;
    const double dr_a = detection_rate(a.test), dr_b = detection_rate(b.test);
    if (dr_a != dr_b) return dr_a > dr_b;
    if (a.size != b.size) return a.size < b.size;
    return a.genome.to_string() < b.genome.to_string();
  };
  const ArchiveEntry* best = &archive.front();
  for (const auto& e : archive)
    if (better(e, *best)) best = &e;
  return *best;
}

const ArchiveEntry& select_solution(const RunResult& result) {
  return select_solution(result.archive);
}

void write_archive_csv(const std::vector<ArchiveEntry>& archive, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kArchiveHeader << '\n';
  for (const auto& e : archive) {
    std::string objectives;
    for (std::size_t i = 0; i < e.objectives.size(); ++i)
      objectives += fmt::format("{}{}", i ? ";" : "", e.objectives[i]);
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", e.genome.to_string(),
                       e.size, metric_cell(accuracy, e.validation),
                       metric_cell(detection_rate, e.validation), metric_cell(f1, e.validation),
                       metric_cell(accuracy, e.test), metric_cell(detection_rate, e.test),
                       metric_cell(f1, e.test), e.validation.tp, e.validation.fp, e.validation.tn,
                       e.validation.fn, e.test.tp, e.test.fp, e.test.tn, e.test.fn, objectives);
  }
  if (!out) throw IoError(fmt::format("failed writing {}", path.string()));
}

std::vector<ArchiveEntry> read_archive_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || split_fields(line, ',') != split_fields(kArchiveHeader, ','))
    throw ParseError(fmt::format("{}: unexpected archive header", path.string()), 1);
  std::vector<ArchiveEntry> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_fields(line, ',');
    if (f.size() != 17)
      throw ParseError(fmt::format("{}: expected 17 fields, got {}", path.string(), f.size()), line_no);
    ArchiveEntry e;
    e.genome = Genome::from_string(f[0]);
    e.size = parse_count(f[1], line_no);
    e.validation = {parse_count(f[8], line_no), parse_count(f[9], line_no),
                    parse_count(f[10], line_no), parse_count(f[11], line_no)};
    e.test = {parse_count(f[12], line_no), parse_count(f[13], line_no), parse_count(f[14], line_no),
              parse_count(f[15], line_no)};
    if (!f[16].empty())
      for (const auto& v : split_fields(f[16], ';')) e.objectives.push_back(parse_double(v, line_no));
    out.push_back(std::move(e));
  }
  return out;
}

void write_progress_jsonl(const std::vector<ProgressRecord>& progress,
                          const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const auto& p : progress) {
    json j;
    j["generation"] = p.generation;
    j["best_accuracy"] = p.best_accuracy;
    j["best_detection_rate"] = p.best_detection_rate;
    j["min_size"] = p.min_size;
    j["archive_size"] = p.archive_size;
    j["evaluations"] = p.evaluations;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError(fmt::format("failed writing {}", path.string()));
}

void write_results(const ExperimentConfig& cfg, const std::vector<RunResult>& results,
                   const std::filesystem::path& dir) {
  ensure_dir(dir);
  {
    std::ofstream out = open_out(dir / "config.json");
    out << config_to_json(cfg);
  }
  std::ofstream runs = open_out(dir / "runs.csv");
  runs << "repeat,seed,bitstring,size,test_accuracy,test_detection_rate,test_f1\n";
  json timing = json::array();
  for (const auto& r : results) {
    const std::string stem = run_stem(r.repeat);
    write_archive_csv(r.archive, dir / (stem + "_archive.csv"));
    if (cfg.method.is_search) write_progress_jsonl(r.progress, dir / (stem + "_progress.jsonl"));
    if (!r.grid.empty()) {
      std::ofstream grid = open_out(dir / (stem + "_grid.csv"));
      grid << "k,test_accuracy,test_detection_rate,test_f1\n";
      for (const auto& p : r.grid)
        grid << fmt::format("{},{},{},{}\n", p.k, metric_cell(accuracy, p.test),
                            metric_cell(detection_rate, p.test), metric_cell(f1, p.test));
    }
    const ArchiveEntry& s = select_solution(r);
    runs << fmt::format("{},{},{},{},{},{},{}\n", r.repeat, r.seed, s.genome.to_string(), s.size,
                        metric_cell(accuracy, s.test), metric_cell(detection_rate, s.test),
                        metric_cell(f1, s.test));
    json t;
    t["repeat"] = r.repeat;
    t["seed"] = r.seed;
    t["wall_seconds"] = r.wall_seconds;
    timing.push_back(t);
  }
  std::ofstream out = open_out(dir / "timing.json");
  out << timing.dump(2) << '\n';
}

std::vector<SelectedMetrics> MethodResults::selected() const {
  std::vector<SelectedMetrics> out;
  out.reserve(runs.size());
  for (const auto& archive : runs) {
    const ArchiveEntry& s = select_solution(archive);
    out.push_back({static_cast<double>(s.size), accuracy(s.test), detection_rate(s.test),
                   make_report(s.test, s.size, std::max<std::size_t>(feature_count, s.size)).f1});
  }
  return out;
}

MethodResults load_method_results(const std::filesystem::path& dir) {
  std::ifstream in(dir / "config.json");
  if (!in) throw IoError(fmt::format("{} has no config.json", dir.string()));
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}/config.json: {}", dir.string(), e.what()));
  }
  MethodResults m;
  try {
    m.label = cfg.at("label").get<std::string>();
    m.method = cfg.at("method").get<std::string>();
    m.classifier = cfg.at("classifier").at("kind").get<std::string>();
    m.feature_count = cfg.at("dataset").at("feature_count").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}/config.json: {}", dir.string(), e.what()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("run_") && name.ends_with("_archive.csv")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError(fmt::format("{} contains no run archives", dir.string()));
  for (const auto& f : files) m.runs.push_back(read_archive_csv(f));
  return m;
}

}  // namespace mofs
