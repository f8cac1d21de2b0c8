#pragma once

// Independent reference implementations used only by tests. Plain nested loops over
// std::vector, no Eigen and nothing from the library under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rdi/feature_set.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline Rows rows_of(const rdi::FeatureSet& fs) {
  Rows rows(static_cast<std::size_t>(fs.size()), std::vector<double>(static_cast<std::size_t>(fs.dim())));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t d = 0; d < rows[i].size(); ++d) {
      rows[i][d] = fs.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d));
    }
  }
  return rows;
}

struct NaiveClasses {
  std::vector<Rows> members;  // members[k] = rows classified as k
  std::vector<std::vector<double>> centers;
  std::vector<double> intra;  // IntraD_k
  std::vector<double> raw_sums;
};

// Groups rows by label, then per class: center = mean, IntraD_k = mean distance to center.
// Empty classes are dropped.
inline NaiveClasses classes_of(const rdi::FeatureSet& fs) {
  const Rows rows = rows_of(fs);
  std::vector<Rows> grouped(static_cast<std::size_t>(fs.num_classes));
  for (std::size_t i = 0; i < rows.size(); ++i) grouped[static_cast<std::size_t>(fs.labels[i])].push_back(rows[i]);
  NaiveClasses out;
  for (auto& members : grouped) {
    if (members.empty()) continue;
    std::vector<double> center(members[0].size(), 0.0);
    for (const auto& r : members) {
      for (std::size_t d = 0; d < center.size(); ++d) center[d] += r[d];
    }
    for (auto& c : center) c /= static_cast<double>(members.size());
    double sum = 0.0;
    for (const auto& r : members) sum += distance(r, center);
    out.centers.push_back(center);
    out.intra.push_back(sum / static_cast<double>(members.size()));
    out.raw_sums.push_back(sum);
    out.members.push_back(std::move(members));
  }
  return out;
}

struct NaiveRdi {
  double intra_d;
  double inter_d;
  double rdi;
};

// Line-by-line transcription of the RDI pseudocode.
inline NaiveRdi rdi(const rdi::FeatureSet& fs) {
  const auto cls = classes_of(fs);
  const std::size_t k_count = cls.centers.size();
  double intra = 0.0;
  for (double v : cls.intra) intra += v;
  intra /= static_cast<double>(k_count);
  std::vector<double> global(cls.centers[0].size(), 0.0);
  for (const auto& c : cls.centers) {
    for (std::size_t d = 0; d < global.size(); ++d) global[d] += c[d];
  }
  for (auto& g : global) g /= static_cast<double>(k_count);
  double inter = 0.0;
  for (const auto& c : cls.centers) inter += distance(c, global);
  inter /= static_cast<double>(k_count);
  const double denom = std::max(inter, intra);
  return {intra, inter, denom > 0.0 ? (inter - intra) / denom : 0.0};
}

inline std::vector<double> minmax(const std::vector<double>& v) {
  double lo = v[0];
  double hi = v[0];
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<double> out(v.size(), 0.0);
  if (hi > lo) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
  }
  return out;
}

// FSA_k = norm(sum_i dist(x_i, c_k)) / |N_k|; FSD_ij = norm(dist(c_i, c_j));
// ROBY_ij = FSA_i + FSA_j - FSD_ij; ROBY = sum norm(ROBY_ij) / (K(K-1)/2).
inline double roby(const rdi::FeatureSet& fs) {
  const auto cls = classes_of(fs);
  const std::size_t k_count = cls.centers.size();
  auto fsa = minmax(cls.raw_sums);
  for (std::size_t k = 0; k < k_count; ++k) fsa[k] /= static_cast<double>(cls.members[k].size());
  std::vector<double> d;
  for (std::size_t i = 0; i < k_count; ++i) {
    for (std::size_t j = i + 1; j < k_count; ++j) d.push_back(distance(cls.centers[i], cls.centers[j]));
  }
  const auto fsd = minmax(d);
  std::vector<double> pair;
  std::size_t p = 0;
  for (std::size_t i = 0; i < k_count; ++i) {
    for (std::size_t j = i + 1; j < k_count; ++j, ++p) pair.push_back(fsa[i] + fsa[j] - fsd[p]);
  }
  const auto norm = minmax(pair);
  double s = 0.0;
  for (double v : norm) s += v;
  return s / (static_cast<double>(k_count * (k_count - 1)) / 2.0);
}

}  // namespace oracle

namespace testgen {

// Random feature set with N <= max_n, D <= max_d, K <= max_k. Each class center is offset by a
// random amount so RDI spans negative and positive values.
inline rdi::FeatureSet random_feature_set(std::mt19937_64& rng, int max_n = 500, int max_d = 64,
                                          int max_k = 20, int min_k = 2) {
  std::uniform_int_distribution<int> kd(min_k, max_k);
  std::uniform_int_distribution<int> dd(1, max_d);
  const int k = kd(rng);
  const int d = dd(rng);
  std::uniform_int_distribution<int> nd(k, std::max(k, max_n));
  const int n = nd(rng);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.01, 5.0);
  const double center_scale = scale(rng);

  std::vector<std::vector<double>> centers(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(d)));
  for (auto& c : centers) {
    for (auto& x : c) x = center_scale * normal(rng);
  }
  rdi::FeatureSet fs;
  fs.num_classes = k;
  fs.vectors.resize(n, d);
  std::uniform_int_distribution<int> label(0, k - 1);
  for (int i = 0; i < n; ++i) {
    // First k rows cover every class so no class is empty.
    const int l = i < k ? i : label(rng);
    fs.labels.push_back(l);
    for (int j = 0; j < d; ++j) {
      fs.vectors(i, j) = centers[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] + normal(rng);
    }
  }
  return fs;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testgen
