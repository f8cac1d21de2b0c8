#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdi/errors.hpp"

namespace rdi {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N feature vectors of dimension D, each tagged with the class the model predicted for it.
///
/// Rows are samples. Labels are predicted labels in [0, num_classes). The scalar type is
/// the storage precision only; every metric accumulates in double.
template <typename Scalar>
struct BasicFeatureSet {
  RowMatrix<Scalar> vectors;
  std::vector<int> labels;
  int num_classes = 0;

  Eigen::Index size() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }

  /// Throws InvalidInput if any structural invariant is broken.
  ///
  /// `min_classes` is 2 for metric inputs; ingest relaxes it to 1 so that a single-class file
  /// can still be loaded and reported on.
  void validate(int min_classes = 2) const {
    if (vectors.rows() < 1) throw InvalidInput("feature set is empty (N must be >= 1)");
    if (vectors.cols() < 1) throw InvalidInput("feature dimension must be >= 1");
    if (static_cast<Eigen::Index>(labels.size()) != vectors.rows()) {
      throw InvalidInput("label count " + std::to_string(labels.size()) +
                         " does not match row count " + std::to_string(vectors.rows()));
    }
    if (num_classes < min_classes) {
      throw InvalidInput("number of classes must be >= " + std::to_string(min_classes) +
                         ", got " + std::to_string(num_classes));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 0 || labels[i] >= num_classes) {
        throw InvalidInput("label " + std::to_string(labels[i]) + " at row " +
                           std::to_string(i) + " outside [0, " + std::to_string(num_classes) +
                           ")");
      }
    }
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        if (!std::isfinite(static_cast<double>(vectors(r, c)))) {
          throw InvalidInput("non-finite coordinate at row " + std::to_string(r) + ", column " +
                             std::to_string(c));
        }
      }
    }
  }

  BasicFeatureSet<double> widened() const {
    return {vectors.template cast<double>(), labels, num_classes};
  }
};

using FeatureSet = BasicFeatureSet<double>;
using FeatureSetF = BasicFeatureSet<float>;

}  // namespace rdi
