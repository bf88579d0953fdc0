#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "mofs/errors.hpp"
#include "mofs/experiment.hpp"
#include "mofs/rng.hpp"

namespace mofs {

using json = nlohmann::ordered_json;

std::string MethodChoice::name() const {
  return std::string(is_search ? to_string(algorithm) : to_string(baseline));
}

MethodChoice parse_method(std::string_view text) {
  MethodChoice m;
  if (text == "sfs" || text == "rfe" || text == "pca" || text == "basic") {
    m.is_search = false;
    m.baseline = parse_baseline_method(text);
  } else {
    m.algorithm = parse_algorithm(text);
  }
  return m;
}

std::string ExperimentConfig::display_label() const {
  return label.empty() ? method.name() : label;
}

void ExperimentConfig::validate() const {
  dataset.validate();
  classifier.validate();
  if (repeats == 0) throw ConfigError("repeats must be at least 1");
  if (repeat_workers == 0) throw ConfigError("repeat_workers must be at least 1");
  if (!(prepare.validation_fraction > 0.0 && prepare.validation_fraction < 1.0))
    throw ConfigError("validation_fraction must be in (0, 1)");
  if (prepare.max_train_rows == 1 || prepare.max_test_rows == 1)
    throw ConfigError("subsample limits must be 0 (no limit) or at least 2");
  if (method.is_search) {
    moea.validate();
    const std::size_t m = arity(formulation);
    if (method.algorithm == Algorithm::ga && m != 1)
      throw ConfigError(fmt::format("ga requires the ACC1 formulation, got {}", to_string(formulation)));
    if (method.algorithm != Algorithm::ga && m < 2)
      throw ConfigError(fmt::format("{} requires a formulation with at least two objectives, got {}",
                                    to_string(method.algorithm), to_string(formulation)));
    if (method.algorithm == Algorithm::nsga3 && moea.reference_dimension != 0 &&
        moea.reference_dimension != m)
      throw ConfigError(fmt::format("reference dimension {} does not match {} objectives",
                                    moea.reference_dimension, m));
  } else if (method.baseline != BaselineMethod::basic) {
    if (baseline_grid.empty()) throw ConfigError("baseline_grid is empty");
  }
}

void apply_preset(ExperimentConfig& cfg, std::string_view preset) {
  if (preset == "paper") {
    cfg.prepare.max_train_rows = 0;
    cfg.prepare.max_test_rows = 0;
    cfg.moea.population = 100;
    cfg.moea.generations = 500;
    cfg.repeats = 10;
  } else if (preset == "desk") {
    cfg.prepare.max_train_rows = 10000;
    cfg.prepare.stratified = true;
    cfg.moea.population = 100;
    cfg.moea.generations = 50;
    cfg.repeats = 5;
  } else {
    throw ConfigError(fmt::format("unknown preset '{}' (expected paper or desk)", preset));
  }
}

namespace {

template <class T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

std::size_t get_count(const json& j, std::string_view key) {
  if (!j.is_number_unsigned()) throw ConfigError(fmt::format("config key '{}' must be a non-negative integer", key));
  return j.get<std::size_t>();
}

std::vector<std::size_t> get_counts(const json& j, std::string_view key) {
  if (!j.is_array()) throw ConfigError(fmt::format("config key '{}' must be an array", key));
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(get_count(v, key));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& text) {
  std::filesystem::path p(text);
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

DatasetSpec parse_dataset(const json& j) {
  if (j.is_string()) return builtin_spec(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("config key 'dataset' must be a name or an object");
  DatasetSpec spec;
  if (j.contains("base")) spec = builtin_spec(get_as<std::string>(j.at("base"), "dataset.base"));
  for (const auto& [key, v] : j.items()) {
    if (key == "base") continue;
    else if (key == "name") spec.name = get_as<std::string>(v, key);
    else if (key == "feature_count") spec.feature_count = get_count(v, key);
    else if (key == "column_count") spec.column_count = get_count(v, key);
    else if (key == "label_column") spec.label_column = get_count(v, key);
    else if (key == "categorical_columns") spec.categorical_columns = get_counts(v, key);
    else if (key == "ignored_columns") spec.ignored_columns = get_counts(v, key);
    else if (key == "has_header") spec.has_header = get_as<bool>(v, key);
    else if (key == "normal_labels") spec.label_rule.normal_labels = get_as<std::vector<std::string>>(v, key);
    else if (key == "attack_labels") spec.label_rule.attack_labels = get_as<std::vector<std::string>>(v, key);
    else if (key == "other_is_attack") spec.label_rule.other_is_attack = get_as<bool>(v, key);
    else throw ConfigError(fmt::format("unknown dataset key '{}'", key));
  }
  spec.validate();
  return spec;
}

void parse_classifier(TrainConfig& c, const json& j) {
  if (j.is_string()) {
    c.kind = parse_classifier_kind(j.get<std::string>());
    return;
  }
  if (!j.is_object()) throw ConfigError("config key 'classifier' must be a name or an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") c.kind = parse_classifier_kind(get_as<std::string>(v, key));
    else if (key == "max_depth") c.cart.max_depth = get_count(v, key);
    else if (key == "min_samples_split") c.cart.min_samples_split = get_count(v, key);
    else if (key == "learning_rate") c.logreg.learning_rate = get_as<double>(v, key);
    else if (key == "epochs") c.logreg.epochs = get_count(v, key);
    else if (key == "l2_penalty") c.logreg.l2_penalty = get_as<double>(v, key);
    else if (key == "tree_count") c.forest.tree_count = get_count(v, key);
    else if (key == "features_per_split") c.forest.features_per_split = get_count(v, key);
    else if (key == "bootstrap") c.forest.bootstrap = get_as<bool>(v, key);
    else throw ConfigError(fmt::format("unknown classifier key '{}'", key));
  }
}

json dataset_json(const DatasetSpec& s) {
  json j;
  j["name"] = s.name;
  j["feature_count"] = s.feature_count;
  j["column_count"] = s.column_count;
  j["label_column"] = s.label_column;
  j["categorical_columns"] = s.categorical_columns;
  j["ignored_columns"] = s.ignored_columns;
  j["has_header"] = s.has_header;
  j["normal_labels"] = s.label_rule.normal_labels;
  j["attack_labels"] = s.label_rule.attack_labels;
  j["other_is_attack"] = s.label_rule.other_is_attack;
  return j;
}

}  // namespace

void apply_config_text(ExperimentConfig& cfg, std::string_view json_text,
                       const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("configuration is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object");

  // Presets go first so that explicit keys override them.
  if (root.contains("preset")) apply_preset(cfg, get_as<std::string>(root.at("preset"), "preset"));

  for (const auto& [key, v] : root.items()) {
    if (key == "preset") continue;
    else if (key == "dataset") cfg.dataset = parse_dataset(v);
    else if (key == "train") cfg.train_path = resolve(base_dir, get_as<std::string>(v, key));
    else if (key == "test") cfg.test_path = resolve(base_dir, get_as<std::string>(v, key));
    else if (key == "method" || key == "algorithm") cfg.method = parse_method(get_as<std::string>(v, key));
    else if (key == "label") cfg.label = get_as<std::string>(v, key);
    else if (key == "formulation") cfg.formulation = parse_formulation(get_as<std::string>(v, key));
    else if (key == "classifier") parse_classifier(cfg.classifier, v);
    else if (key == "population") cfg.moea.population = get_count(v, key);
    else if (key == "generations") cfg.moea.generations = get_count(v, key);
    else if (key == "crossover_prob") cfg.moea.crossover_prob = get_as<double>(v, key);
    else if (key == "mutation_prob") cfg.moea.mutation_prob = get_as<double>(v, key);
    else if (key == "workers") cfg.moea.workers = get_count(v, key);
    else if (key == "nsga3_divisions") cfg.moea.nsga3_divisions = get_count(v, key);
    else if (key == "reference_dimension") cfg.moea.reference_dimension = get_count(v, key);
    else if (key == "moead_neighbors") cfg.moea.moead_neighbors = get_count(v, key);
    else if (key == "moead_divisions") cfg.moea.moead_divisions = get_count(v, key);
    else if (key == "external_archive") cfg.moea.external_archive = get_as<bool>(v, key);
    else if (key == "repeats") cfg.repeats = get_count(v, key);
    else if (key == "repeat_workers") cfg.repeat_workers = get_count(v, key);
    else if (key == "seed") cfg.master_seed = get_as<std::uint64_t>(v, key);
    else if (key == "validation_fraction") cfg.prepare.validation_fraction = get_as<double>(v, key);
    else if (key == "max_train_rows") cfg.prepare.max_train_rows = get_count(v, key);
    else if (key == "max_test_rows") cfg.prepare.max_test_rows = get_count(v, key);
    else if (key == "stratified") cfg.prepare.stratified = get_as<bool>(v, key);
    else if (key == "baseline_grid") cfg.baseline_grid = get_counts(v, key);
    else if (key == "out") cfg.output_dir = resolve(base_dir, get_as<std::string>(v, key));
    else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open configuration file {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, text.str(), path.parent_path());
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["dataset"] = dataset_json(cfg.dataset);
  j["train"] = cfg.train_path.string();
  j["test"] = cfg.test_path.string();
  j["method"] = cfg.method.name();
  j["label"] = cfg.display_label();
  j["formulation"] = std::string(to_string(cfg.formulation));
  json c;
  c["kind"] = std::string(to_string(cfg.classifier.kind));
  c["max_depth"] = cfg.classifier.cart.max_depth;
  c["min_samples_split"] = cfg.classifier.cart.min_samples_split;
  c["learning_rate"] = cfg.classifier.logreg.learning_rate;
  c["epochs"] = cfg.classifier.logreg.epochs;
  c["l2_penalty"] = cfg.classifier.logreg.l2_penalty;
  c["tree_count"] = cfg.classifier.forest.tree_count;
  c["features_per_split"] = cfg.classifier.forest.features_per_split;
  c["bootstrap"] = cfg.classifier.forest.bootstrap;
  j["classifier"] = c;
  j["population"] = cfg.moea.population;
  j["generations"] = cfg.moea.generations;
  j["crossover_prob"] = cfg.moea.crossover_prob;
  j["mutation_prob"] = cfg.moea.mutation_prob;
  j["nsga3_divisions"] = cfg.moea.nsga3_divisions;
  j["reference_dimension"] = cfg.moea.reference_dimension;
  j["moead_neighbors"] = cfg.moea.moead_neighbors;
  j["moead_divisions"] = cfg.moea.moead_divisions;
  j["external_archive"] = cfg.moea.external_archive;
  j["repeats"] = cfg.repeats;
  j["seed"] = cfg.master_seed;
  j["validation_fraction"] = cfg.prepare.validation_fraction;
  j["max_train_rows"] = cfg.prepare.max_train_rows;
  j["max_test_rows"] = cfg.prepare.max_test_rows;
  j["stratified"] = cfg.prepare.stratified;
  j["baseline_grid"] = cfg.baseline_grid;
  // Thread counts and the output directory are not recorded.
  return j.dump(2) + "\n";
}

std::uint64_t repeat_seed(std::uint64_t master, std::size_t repeat) {
  return derive_seed(master, static_cast<std::uint64_t>(repeat));
}

std::uint64_t data_seed(std::uint64_t master) { return derive_seed(master, 0xDA7A5EEDULL); }

}  // namespace mofs
