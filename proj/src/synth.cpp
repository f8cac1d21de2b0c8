#include "rdi/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rdi {
namespace {

class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double uniform_open() {
    // (0, 1]: avoids log(0) in Box-Muller.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Eigen::MatrixXd center_directions(const MixtureSpec& spec) {
  NormalSource normals(splitmix64(spec.seed));
  Eigen::MatrixXd dirs(spec.dim, spec.num_classes);
  for (int k = 0; k < spec.num_classes; ++k) {
    for (int d = 0; d < spec.dim; ++d) dirs(d, k) = normals.next();
  }
  const bool orthogonalize = spec.num_classes <= spec.dim;
  for (int k = 0; k < spec.num_classes; ++k) {
    if (orthogonalize) {
      for (int j = 0; j < k; ++j) dirs.col(k) -= dirs.col(j).dot(dirs.col(k)) * dirs.col(j);
    }
    const double norm = dirs.col(k).norm();
    if (norm == 0.0) throw InvalidInput("degenerate center direction; try another seed");
    dirs.col(k) /= norm;
  }
  return dirs;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void MixtureSpec::validate() const {
  if (num_classes < 2) throw InvalidInput("classes must be >= 2");
  if (dim < 2) throw InvalidInput("dim must be >= 2");
  if (per_class < 1) throw InvalidInput("per-class must be >= 1");
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw InvalidInput("separation must be a finite value > 0");
  }
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw InvalidInput("spread must be a finite value > 0");
  }
}

FeatureSet generate_mixture(const MixtureSpec& spec) {
  spec.validate();
  const Eigen::MatrixXd centers = center_directions(spec) * spec.separation;

  FeatureSet fs;
  fs.num_classes = spec.num_classes;
  fs.vectors.resize(static_cast<Eigen::Index>(spec.num_classes) * spec.per_class, spec.dim);
  fs.labels.reserve(static_cast<std::size_t>(fs.vectors.rows()));
  Eigen::Index row = 0;
  for (int k = 0; k < spec.num_classes; ++k) {
    NormalSource normals(splitmix64(spec.seed + static_cast<std::uint64_t>(k) + 1));
    for (int i = 0; i < spec.per_class; ++i, ++row) {
      for (int d = 0; d < spec.dim; ++d) {
        fs.vectors(row, d) = centers(d, k) + spec.spread * normals.next();
      }
      fs.labels.push_back(k);
    }
  }
  return fs;
}

}  // namespace rdi
