#pragma once

#include <cstdint>
#include <vector>

namespace rdi {

struct BenchRow {
  int num_classes = 0;
  int per_class = 0;
  double rdi_ms = 0.0;
  double roby_ms = 0.0;

  double ratio() const { return rdi_ms > 0.0 ? roby_ms / rdi_ms : 0.0; }
};

struct BenchConfig {
  std::vector<int> classes;
  int dim = 64;
  // Total sample count held fixed across class counts; each class gets total / K samples.
  int total_samples = 20000;
  double separation = 4.0;
  double spread = 1.0;
  std::uint64_t seed = 0;
  int repeats = 5;
};

/// Wall-clock median over `repeats` runs of compute_rdi and compute_roby per class count.
std::vector<BenchRow> run_scaling_bench(const BenchConfig& config);

double median(std::vector<double> values);

}  // namespace rdi
