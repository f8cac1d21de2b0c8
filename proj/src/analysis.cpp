#include "rdi/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "rdi/errors.hpp"

namespace rdi {
namespace {

void check_pair(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw InvalidInput("length mismatch: " + std::to_string(xs.size()) + " vs " +
                       std::to_string(ys.size()));
  }
  if (xs.size() < 3) throw InvalidInput("correlation needs at least 3 points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw InvalidInput("non-finite value at index " + std::to_string(i));
    }
  }
}

// Product-moment correlation over two-pass centered sums. Returns nullopt on zero variance.
std::optional<double> product_moment(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Metric parse_metric(const std::string& name) {
  if (name == "rdi") return Metric::rdi;
  if (name == "roby") return Metric::roby;
  throw InvalidInput("unknown metric '" + name + "' (expected rdi or roby)");
}

Target parse_target(const std::string& name) {
  if (name == "adv_acc" || name == "adv_accuracy_avg") return Target::adv_accuracy_avg;
  if (name == "asr" || name == "asr_avg") return Target::asr_avg;
  throw InvalidInput("unknown target '" + name + "' (expected adv_acc or asr)");
}

std::string to_string(Metric m) { return m == Metric::rdi ? "rdi" : "roby"; }

std::string to_string(Target t) {
  return t == Target::adv_accuracy_avg ? "adv_accuracy_avg" : "asr_avg";
}

double metric_value(const RobustnessRecord& r, Metric m) {
  return m == Metric::rdi ? r.rdi : r.roby;
}

double target_value(const RobustnessRecord& r, Target t) {
  return t == Target::adv_accuracy_avg ? r.adv_accuracy_avg : r.asr_avg;
}

std::vector<double> fractional_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double shared = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = shared;
    i = j + 1;
  }
  return ranks;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  check_pair(xs, ys);
  const auto rho = product_moment(fractional_ranks(xs), fractional_ranks(ys));
  if (!rho) throw InvalidInput("spearman undefined: all values tied in one argument");
  return *rho;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  check_pair(xs, ys);
  const auto r = product_moment(xs, ys);
  if (!r) throw InvalidInput("pearson undefined: zero variance");
  return *r;
}

FixtureEvaluation evaluate_fixture(const std::vector<RobustnessRecord>& records, Metric metric,
                                   Target target) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RobustnessRecord*>> groups;
  for (const auto& r : records) {
    auto [it, inserted] = groups.try_emplace(r.dataset);
    if (inserted) order.push_back(r.dataset);
    it->second.push_back(&r);
  }

  FixtureEvaluation out;
  for (const auto& name : order) {
    const auto& group = groups[name];
    if (group.size() < 3) {
      out.warnings.push_back("dataset " + name + " skipped: " + std::to_string(group.size()) +
                             " records, need at least 3");
      continue;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto* r : group) {
      xs.push_back(metric_value(*r, metric));
      ys.push_back(target_value(*r, target));
    }
    CorrelationReport report;
    report.dataset = name;
    report.metric_name = to_string(metric);
    report.target_name = to_string(target);
    report.n = static_cast<int>(group.size());
    try {
      report.spearman = spearman(xs, ys);
    } catch (const InvalidInput& e) {
      out.warnings.push_back("dataset " + name + " skipped: " + e.what());
      continue;
    }
    report.pearson = product_moment(xs, ys);
    if (!report.pearson) {
      out.warnings.push_back("dataset " + name + ": pearson undefined (zero variance)");
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

std::vector<std::string> rank_models(const std::vector<RobustnessRecord>& records, Metric by) {
  std::vector<const RobustnessRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [by](const auto* a, const auto* b) {
    const double va = metric_value(*a, by);
    const double vb = metric_value(*b, by);
    if (va != vb) return va < vb;
    return a->model < b->model;
  });
  std::vector<std::string> names;
  for (const auto* r : sorted) names.push_back(r->model);
  return names;
}

std::vector<RobustnessRecord> load_fixture_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  auto fail = [&](std::size_t line, const std::string& what) -> FormatError {
    return FormatError(path.string() + ": line " + std::to_string(line) + ": " + what);
  };

  std::vector<std::string> header;
  std::vector<RobustnessRecord> records;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cells = split(stripped);
    if (header.empty()) {
      header = std::move(cells);
      for (const char* required :
           {"dataset", "model", "accuracy", "asr_avg", "adv_acc_avg", "roby", "rdi"}) {
        if (std::find(header.begin(), header.end(), required) == header.end()) {
          throw fail(lineno, std::string("missing column '") + required + "'");
        }
      }
      continue;
    }
    if (cells.size() != header.size()) {
      throw fail(lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
    }
    RobustnessRecord r;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& col = header[c];
      const auto& cell = cells[c];
      if (col == "dataset") {
        r.dataset = cell;
        continue;
      }
      if (col == "model") {
        r.model = cell;
        continue;
      }
      const bool is_attack = col.rfind("asr_", 0) == 0 && col != "asr_avg";
      if (cell.empty()) {
        if (is_attack) continue;
        throw fail(lineno, "empty value for '" + col + "'");
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw fail(lineno, "cannot parse '" + cell + "' in column '" + col + "'");
      }
      if (is_attack) {
        r.asr_per_attack[col.substr(4)] = v;
      } else if (col == "accuracy") {
        r.accuracy = v;
      } else if (col == "asr_avg") {
        r.asr_avg = v;
      } else if (col == "adv_acc_avg") {
        r.adv_accuracy_avg = v;
      } else if (col == "roby") {
        r.roby = v;
      } else if (col == "rdi") {
        r.rdi = v;
      }
    }
    if (r.dataset.empty() || r.model.empty()) throw fail(lineno, "dataset and model are required");
    if (r.rdi < -1.0 || r.rdi > 1.0) throw fail(lineno, "rdi outside [-1, 1]");
    for (double p : {r.accuracy, r.asr_avg, r.adv_accuracy_avg}) {
      if (p < 0.0 || p > 1.0) throw fail(lineno, "rate outside [0, 1]");
    }
    records.push_back(std::move(r));
  }
  if (header.empty()) throw FormatError(path.string() + ": line 1: no header");
  return records;
}

}  // namespace rdi
