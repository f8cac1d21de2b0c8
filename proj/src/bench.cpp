#include "rdi/bench.hpp"

#include <algorithm>
#include <chrono>

#include "rdi/errors.hpp"
#include "rdi/metric.hpp"
#include "rdi/synth.hpp"

namespace rdi {
namespace {

template <typename F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

// Keeps results observable so the timed calls cannot be elided.
volatile double g_sink = 0.0;

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<BenchRow> run_scaling_bench(const BenchConfig& config) {
  if (config.classes.empty()) throw InvalidInput("class list is empty");
  if (config.repeats < 1) throw InvalidInput("repeats must be >= 1");
  std::vector<BenchRow> rows;
  for (int k : config.classes) {
    if (k < 2) throw InvalidInput("class counts must be >= 2");
    MixtureSpec spec;
    spec.num_classes = k;
    spec.dim = config.dim;
    spec.per_class = std::max(1, config.total_samples / k);
    spec.separation = config.separation;
    spec.spread = config.spread;
    spec.seed = config.seed;
    const auto fs = generate_mixture(spec);

    // One untimed warm-up of each so first-touch allocation is not charged to either metric.
    g_sink = compute_rdi(fs).rdi + compute_roby(fs).roby;

    std::vector<double> rdi_times;
    std::vector<double> roby_times;
    for (int r = 0; r < config.repeats; ++r) {
      rdi_times.push_back(time_ms([&] { g_sink = compute_rdi(fs).rdi; }));
      roby_times.push_back(time_ms([&] { g_sink = compute_roby(fs).roby; }));
    }
    rows.push_back({k, spec.per_class, median(rdi_times), median(roby_times)});
  }
  return rows;
}

}  // namespace rdi
