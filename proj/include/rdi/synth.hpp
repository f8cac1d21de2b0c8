#pragma once

#include <cstdint>

#include "rdi/feature_set.hpp"

namespace rdi {

/// Isotropic Gaussian clusters, one per class, with centers on a sphere of radius `separation`.
struct MixtureSpec {
  int num_classes = 2;
  int dim = 2;
  int per_class = 1;
  double separation = 1.0;
  double spread = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic in `spec`: identical specs give bit-identical feature sets on any platform with
/// IEEE doubles and a correctly rounded libm.
///
/// Randomness comes from std::mt19937_64 (its output sequence is fixed by the C++ standard).
/// Uniforms are the top 53 bits scaled by 2^-53; normals use the Box-Muller transform, so no
/// library distribution objects are involved. Stream layout:
///   - center directions: engine seeded with splitmix64(seed)
///   - samples of class k: engine seeded with splitmix64(seed + k + 1)
/// Directions are Gram-Schmidt orthogonalized when K <= D. Labels are the generating class.
FeatureSet generate_mixture(const MixtureSpec& spec);

/// Moves every row toward its class center: x <- c_k + alpha * (x - c_k). Centers are unchanged.
template <typename Scalar>
BasicFeatureSet<Scalar> contract_toward_centers(const BasicFeatureSet<Scalar>& fs, double alpha);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rdi

#include "rdi/synth_impl.hpp"
