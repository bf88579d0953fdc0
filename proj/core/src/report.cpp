#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mofs/errors.hpp"
#include "mofs/experiment.hpp"
#include "mofs/stats.hpp"

namespace mofs {

std::string format_mean_std(double mean, double stddev, int decimals, double scale) {
  return fmt::format("{:.{}f}±{:.{}f}", mean * scale, decimals, stddev * scale, decimals);
}

namespace {

enum class Metric { size, accuracy, detection_rate };
constexpr Metric kMetrics[] = {Metric::size, Metric::accuracy, Metric::detection_rate};

const char* metric_title(Metric m) {
  switch (m) {
    case Metric::size: return "Size";
    case Metric::accuracy: return "Accuracy(%)";
    case Metric::detection_rate: return "DR(%)";
  }
  return "?";
}

const char* metric_key(Metric m) {
  switch (m) {
    case Metric::size: return "size";
    case Metric::accuracy: return "accuracy";
    case Metric::detection_rate: return "detection_rate";
  }
  return "?";
}

int decimals(Metric m) { return m == Metric::size ? 1 : 2; }
double scale(Metric m) { return m == Metric::size ? 1.0 : 100.0; }
bool lower_is_better(Metric m) { return m == Metric::size; }

std::vector<double> column(const std::vector<SelectedMetrics>& rows, Metric m) {
  std::vector<double> out;
  for (const auto& r : rows) {
    switch (m) {
      case Metric::size: out.push_back(r.size); break;
      case Metric::accuracy: out.push_back(r.accuracy); break;
      case Metric::detection_rate: out.push_back(r.detection_rate); break;
    }
  }
  return out;
}

struct Cell {
  bool present = false;
  std::vector<double> values[3];
  Summary summary[3];
  // "•" primary significantly better, "∘" significantly worse.
  std::string mark[3];
};

// Displayed width of a UTF-8 string.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

// Sign of (primary - other) in the "better" direction, at display precision.
int compare_for_primary(double primary, double other, Metric m) {
  const double k = std::pow(10.0, decimals(m)) * scale(m);
  const double a = std::round(primary * k), b = std::round(other * k);
  if (a == b) return 0;
  return (lower_is_better(m) ? a < b : a > b) ? 1 : -1;
}

std::string significance_mark(const std::vector<double>& primary, const std::vector<double>& other,
                              Metric m, double alpha) {
  WelchResult t;
  if (primary.size() >= 2 && other.size() >= 2) {
    t = welch_t_test(primary, other, alpha);
  } else if (primary.size() >= 2 && other.size() == 1) {
    t = one_sample_t_test(primary, other.front(), alpha);
  } else if (primary.size() == 1 && other.size() >= 2) {
    t = one_sample_t_test(other, primary.front(), alpha);
    t.t = -t.t;
  } else {
    return "";
  }
  if (!t.significant || t.t == 0.0) return "";
  const bool primary_higher = t.t > 0.0;
  return primary_higher != lower_is_better(m) ? "•" : "∘";
}

std::ofstream open_report(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  return out;
}

}  // namespace

std::string export_table(const std::vector<MethodResults>& methods, const TableOptions& options,
                         const std::filesystem::path& out_dir) {
  std::vector<std::string> labels, classifiers;
  for (const auto& m : methods) {
    if (std::find(labels.begin(), labels.end(), m.label) == labels.end()) labels.push_back(m.label);
    if (std::find(classifiers.begin(), classifiers.end(), m.classifier) == classifiers.end())
      classifiers.push_back(m.classifier);
  }
  const std::string primary = options.primary.empty() && !labels.empty() ? labels.front() : options.primary;

  std::vector<std::vector<Cell>> cells(labels.size(), std::vector<Cell>(classifiers.size()));
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  for (const auto& m : methods) {
    Cell& c = cells[index_of(labels, m.label)][index_of(classifiers, m.classifier)];
    const auto rows = m.selected();
    for (std::size_t k = 0; k < 3; ++k) {
      const auto col = column(rows, kMetrics[k]);
      c.values[k].insert(c.values[k].end(), col.begin(), col.end());
    }
    c.present = true;
  }
  for (auto& row : cells)
    for (auto& c : row)
      if (c.present)
        for (std::size_t k = 0; k < 3; ++k) c.summary[k] = summarize(c.values[k]);

  const std::size_t p = index_of(labels, primary);
  const bool have_primary = p < labels.size();
  struct Wtl {
    std::size_t w = 0, t = 0, l = 0;
  };
  std::vector<Wtl> wtl(labels.size());
  if (have_primary) {
    for (std::size_t r = 0; r < labels.size(); ++r) {
      if (r == p) continue;
      for (std::size_t c = 0; c < classifiers.size(); ++c) {
        const Cell& a = cells[p][c];
        Cell& b = cells[r][c];
        if (!a.present || !b.present) continue;
        for (std::size_t k = 0; k < 3; ++k) {
          b.mark[k] = significance_mark(a.values[k], b.values[k], kMetrics[k], options.alpha);
          const int cmp = compare_for_primary(a.summary[k].mean, b.summary[k].mean, kMetrics[k]);
          (cmp > 0 ? wtl[r].w : cmp < 0 ? wtl[r].l : wtl[r].t) += 1;
        }
      }
    }
  }

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv = open_report(out_dir / "table.csv");
    csv << "method,classifier,repeats";
    for (Metric m : kMetrics)
      csv << fmt::format(",{0}_mean,{0}_std,{0}_mark", metric_key(m));
    csv << '\n';
    for (std::size_t r = 0; r < labels.size(); ++r)
      for (std::size_t c = 0; c < classifiers.size(); ++c) {
        const Cell& cell = cells[r][c];
        if (!cell.present) continue;
        csv << fmt::format("{},{},{}", labels[r], classifiers[c], cell.summary[0].count);
        for (std::size_t k = 0; k < 3; ++k)
          csv << fmt::format(",{},{},{}", cell.summary[k].mean * scale(kMetrics[k]),
                             cell.summary[k].stddev * scale(kMetrics[k]), cell.mark[k]);
        csv << '\n';
      }
    std::ofstream w = open_report(out_dir / "wtl.csv");
    w << "method,primary,wins,ties,losses\n";
    if (have_primary)
      for (std::size_t r = 0; r < labels.size(); ++r)
        if (r != p) w << fmt::format("{},{},{},{},{}\n", labels[r], primary, wtl[r].w, wtl[r].t, wtl[r].l);
  }

  // Text table: one row per method, a column group per classifier.
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head1{"Method"}, head2{""};
  for (const auto& c : classifiers)
    for (std::size_t k = 0; k < 3; ++k) {
      head1.push_back(k == 0 ? c : "");
      head2.push_back(metric_title(kMetrics[k]));
    }
  head1.push_back("w/t/l");
  head2.push_back("");
  grid.push_back(head1);
  grid.push_back(head2);
  bool single_repeat = false;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    std::vector<std::string> line{labels[r]};
    for (std::size_t c = 0; c < classifiers.size(); ++c) {
      const Cell& cell = cells[r][c];
      for (std::size_t k = 0; k < 3; ++k) {
        if (!cell.present) {
          line.push_back("-");
          continue;
        }
        const Metric m = kMetrics[k];
        std::string text = format_mean_std(cell.summary[k].mean, cell.summary[k].stddev, decimals(m), scale(m));
        if (cell.summary[k].count == 1) {
          text += "†";
          single_repeat = true;
        }
        line.push_back(text + cell.mark[k]);
      }
    }
    line.push_back(have_primary && r != p ? fmt::format("{}/{}/{}", wtl[r].w, wtl[r].t, wtl[r].l) : "");
    grid.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(grid.front().size(), 0);
  for (const auto& row : grid)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], display_width(row[i]));
  std::ostringstream text;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += pad(row[i], widths[i] + 2);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    text << line << '\n';
  }
  if (have_primary)
    text << fmt::format("\n•/∘: {} is significantly better/worse (Welch t-test, alpha = {}).\n"
                        "w/t/l: cells where {} is better/same/worse by mean.\n",
                        primary, options.alpha, primary);
  if (std::any_of(methods.begin(), methods.end(), [](const MethodResults& m) { return m.method == "pca"; }))
    text << "PCA size is the number of retained components.\n";
  if (single_repeat)
    text << "†: single repeat of a deterministic method; the standard deviation is reported as 0.\n";

  std::ofstream txt = open_report(out_dir / "table.txt");
  txt << text.str();
  return text.str();
}

void export_projection(const std::vector<MethodResults>& methods,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream ra = open_report(out_dir / "projection_reduction_accuracy.csv");
  std::ofstream rd = open_report(out_dir / "projection_reduction_dr.csv");
  std::ofstream ad = open_report(out_dir / "projection_accuracy_dr.csv");
  ra << "method,classifier,repeat,feature_reduction,accuracy\n";
  rd << "method,classifier,repeat,feature_reduction,detection_rate\n";
  ad << "method,classifier,repeat,accuracy,detection_rate\n";
  for (const auto& m : methods) {
    for (std::size_t r = 0; r < m.runs.size(); ++r) {
      for (const auto& e : m.runs[r]) {
        const double reduction = feature_reduction(e.size, m.feature_count);
        const double acc = accuracy(e.test), dr = detection_rate(e.test);
        ra << fmt::format("{},{},{},{},{}\n", m.label, m.classifier, r, reduction, acc);
        rd << fmt::format("{},{},{},{},{}\n", m.label, m.classifier, r, reduction, dr);
        ad << fmt::format("{},{},{},{},{}\n", m.label, m.classifier, r, acc, dr);
      }
    }
  }
}

}  // namespace mofs
