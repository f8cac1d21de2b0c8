#pragma once

#include <string>

#include "rdi/metric.hpp"

namespace rdi {

template <typename Scalar>
BasicFeatureSet<Scalar> contract_toward_centers(const BasicFeatureSet<Scalar>& fs, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidInput("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  const auto stats = compute_class_statistics(fs);
  BasicFeatureSet<Scalar> out = fs;
  if (alpha == 1.0) return out;
  for (Eigen::Index i = 0; i < fs.size(); ++i) {
    const auto& center = stats[static_cast<std::size_t>(fs.labels[static_cast<std::size_t>(i)])].center;
    const Eigen::VectorXd row = fs.vectors.row(i).transpose().template cast<double>();
    out.vectors.row(i) = (center + alpha * (row - center)).transpose().template cast<Scalar>();
  }
  return out;
}

}  // namespace rdi
