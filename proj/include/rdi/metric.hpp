#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdi/errors.hpp"
#include "rdi/feature_set.hpp"

namespace rdi {

/// Per-class aggregate. `center` is empty (size 0) when the class received no samples.
struct ClassStats {
  int class_index = 0;
  Eigen::VectorXd center;
  Eigen::Index count = 0;
  double intra_distance = 0.0;

  bool empty() const { return count == 0; }
};

struct RdiReport {
  double intra_d = 0.0;
  double inter_d = 0.0;
  Eigen::VectorXd global_center;
  double rdi = 0.0;
  int effective_classes = 0;
  Eigen::Index num_samples = 0;
  std::vector<ClassStats> per_class;
  std::vector<std::string> warnings;
};

struct ClassPair {
  int first = 0;
  int second = 0;

  friend bool operator==(const ClassPair&, const ClassPair&) = default;
};

/// ROBY baseline. Per-class arrays are aligned with `classes` (non-empty classes only, in
/// ascending index order); pairwise arrays are aligned with `pairs` (i < j, row-major order).
struct RobyReport {
  std::vector<int> classes;
  std::vector<double> fsa;
  std::vector<ClassPair> pairs;
  std::vector<double> fsd;
  std::vector<double> pairwise_roby;
  std::vector<double> normalized_pairwise_roby;
  double roby = 0.0;
};

template <typename DerivedA, typename DerivedB>
double euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  }
  return (a.template cast<double>() - b.template cast<double>()).norm();
}

/// Class centers and mean distance-to-center, in two passes over the rows in ascending index
/// order. Cost is O(N * D) regardless of the number of classes.
template <typename Scalar>
std::vector<ClassStats> compute_class_statistics(const BasicFeatureSet<Scalar>& fs) {
  fs.validate(1);
  const auto num_classes = static_cast<std::size_t>(fs.num_classes);
  const Eigen::Index dim = fs.dim();

  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(dim, fs.num_classes);
  std::vector<Eigen::Index> counts(num_classes, 0);
  for (Eigen::Index i = 0; i < fs.size(); ++i) {
    const int k = fs.labels[static_cast<std::size_t>(i)];
    sums.col(k) += fs.vectors.row(i).transpose().template cast<double>();
    ++counts[static_cast<std::size_t>(k)];
  }

  std::vector<ClassStats> stats(num_classes);
  for (std::size_t k = 0; k < num_classes; ++k) {
    stats[k].class_index = static_cast<int>(k);
    stats[k].count = counts[k];
    if (counts[k] > 0) {
      stats[k].center = sums.col(static_cast<Eigen::Index>(k)) / static_cast<double>(counts[k]);
    }
  }

  std::vector<double> distance_sums(num_classes, 0.0);
  for (Eigen::Index i = 0; i < fs.size(); ++i) {
    const auto k = static_cast<std::size_t>(fs.labels[static_cast<std::size_t>(i)]);
    distance_sums[k] += euclidean_distance(fs.vectors.row(i).transpose(), stats[k].center);
  }
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (counts[k] > 0) stats[k].intra_distance = distance_sums[k] / static_cast<double>(counts[k]);
  }
  return stats;
}

/// Unweighted mean of the non-empty class centers. This is the mean of centers, not of samples.
inline Eigen::VectorXd compute_global_center(const std::vector<ClassStats>& stats) {
  Eigen::VectorXd sum;
  int used = 0;
  for (const auto& s : stats) {
    if (s.empty()) continue;
    if (used == 0) {
      sum = s.center;
    } else {
      if (s.center.size() != sum.size()) throw InvalidInput("class centers differ in dimension");
      sum += s.center;
    }
    ++used;
  }
  if (used == 0) throw InvalidInput("all classes are empty");
  return sum / static_cast<double>(used);
}

/// Mean distance from each non-empty class center to `global_center`.
inline double compute_interd(const std::vector<ClassStats>& stats,
                             const Eigen::VectorXd& global_center) {
  double total = 0.0;
  int used = 0;
  for (const auto& s : stats) {
    if (s.empty()) continue;
    total += euclidean_distance(s.center, global_center);
    ++used;
  }
  if (used == 0) throw InvalidInput("all classes are empty");
  return total / used;
}

/// (inter - intra) / max(inter, intra), with 0 when both vanish.
inline double rdi_from_distances(double inter_d, double intra_d) {
  const double denom = std::max(inter_d, intra_d);
  if (denom <= 0.0) return 0.0;
  return std::clamp((inter_d - intra_d) / denom, -1.0, 1.0);
}

template <typename Scalar>
RdiReport compute_rdi(const BasicFeatureSet<Scalar>& fs) {
  RdiReport report;
  report.per_class = compute_class_statistics(fs);
  report.num_samples = fs.size();

  double intra_total = 0.0;
  for (const auto& s : report.per_class) {
    if (s.empty()) {
      report.warnings.push_back("class " + std::to_string(s.class_index) +
                                " has no samples and is excluded");
      continue;
    }
    intra_total += s.intra_distance;
    ++report.effective_classes;
  }
  report.intra_d = intra_total / report.effective_classes;
  report.global_center = compute_global_center(report.per_class);
  report.inter_d = compute_interd(report.per_class, report.global_center);
  report.rdi = rdi_from_distances(report.inter_d, report.intra_d);
  if (report.effective_classes < 2) {
    report.warnings.push_back(
        "only one non-empty class: InterD is 0 and RDI carries no robustness signal");
  }
  return report;
}

/// (v - min) / (max - min); all zeros when max == min.
inline std::vector<double> min_max_normalize(const std::vector<double>& values) {
  if (values.empty()) throw InvalidInput("cannot normalize an empty list");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<double> out(values.size(), 0.0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / range;
  }
  return out;
}

/// ROBY from min-max normalized intra-class sums (FSA), pairwise center distances (FSD) and
/// their pairwise combination. Every normalization runs over one model's values only.
template <typename Scalar>
RobyReport compute_roby(const BasicFeatureSet<Scalar>& fs) {
  const auto stats = compute_class_statistics(fs);

  RobyReport report;
  std::vector<const ClassStats*> present;
  std::vector<double> raw_sums;
  for (const auto& s : stats) {
    if (s.empty()) continue;
    present.push_back(&s);
    report.classes.push_back(s.class_index);
    raw_sums.push_back(s.intra_distance * static_cast<double>(s.count));
  }
  if (present.size() < 2) {
    throw InvalidInput("ROBY needs at least 2 non-empty classes, got " +
                       std::to_string(present.size()));
  }

  report.fsa = min_max_normalize(raw_sums);
  for (std::size_t k = 0; k < present.size(); ++k) {
    report.fsa[k] /= static_cast<double>(present[k]->count);
  }

  const std::size_t m = present.size();
  const std::size_t num_pairs = m * (m - 1) / 2;
  report.pairs.reserve(num_pairs);
  std::vector<double> center_distances;
  center_distances.reserve(num_pairs);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      report.pairs.push_back({present[i]->class_index, present[j]->class_index});
      center_distances.push_back(euclidean_distance(present[i]->center, present[j]->center));
    }
  }
  report.fsd = min_max_normalize(center_distances);

  report.pairwise_roby.reserve(num_pairs);
  std::size_t p = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j, ++p) {
      report.pairwise_roby.push_back(report.fsa[i] + report.fsa[j] - report.fsd[p]);
    }
  }
  report.normalized_pairwise_roby = min_max_normalize(report.pairwise_roby);
  double total = 0.0;
  for (double v : report.normalized_pairwise_roby) total += v;
  report.roby = total / static_cast<double>(num_pairs);
  return report;
}

}  // namespace rdi
