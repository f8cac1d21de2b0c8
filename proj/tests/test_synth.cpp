#include <gtest/gtest.h>

#include <random>

#include "naive_oracle.hpp"
#include "rdi/metric.hpp"
#include "rdi/synth.hpp"

namespace {

rdi::MixtureSpec spec_of(int k, int d, int n, double sep, double spread, std::uint64_t seed) {
  rdi::MixtureSpec s;
  s.num_classes = k;
  s.dim = d;
  s.per_class = n;
  s.separation = sep;
  s.spread = spread;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(GenerateMixture, SameSpecIsBitIdentical) {
  const auto spec = spec_of(5, 8, 30, 3.0, 0.7, 42);
  const auto a = rdi::generate_mixture(spec);
  const auto b = rdi::generate_mixture(spec);
  EXPECT_TRUE(a.vectors == b.vectors);
  EXPECT_EQ(a.labels, b.labels);
  const auto c = rdi::generate_mixture(spec_of(5, 8, 30, 3.0, 0.7, 43));
  EXPECT_FALSE(a.vectors == c.vectors);
}

TEST(GenerateMixture, FrozenStreamValues) {
  // Expected values come from an independent Python re-implementation of the documented stream
  // (mt19937_64 seeded through splitmix64, top-53-bit uniforms, Box-Muller, Gram-Schmidt).
  const auto fs = rdi::generate_mixture(spec_of(2, 2, 1, 1.0, 1.0, 0));
  ASSERT_EQ(fs.size(), 2);
  EXPECT_EQ(fs.labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(fs.vectors(0, 0), 1.7655186766851916);
  EXPECT_EQ(fs.vectors(0, 1), -1.1598502499089729);
  EXPECT_EQ(fs.vectors(1, 0), -1.1085031990978997);
  EXPECT_EQ(fs.vectors(1, 1), -2.3154133337698073);
}

TEST(GenerateMixture, ShapeAndLabels) {
  const auto fs = rdi::generate_mixture(spec_of(4, 3, 7, 2.0, 0.5, 1));
  EXPECT_EQ(fs.size(), 28);
  EXPECT_EQ(fs.dim(), 3);
  EXPECT_EQ(fs.num_classes, 4);
  for (int i = 0; i < 28; ++i) EXPECT_EQ(fs.labels[static_cast<std::size_t>(i)], i / 7);
}

TEST(GenerateMixture, CentersOnSphereAndOrthogonalWhenKLeqD) {
  // Tiny spread: sample means sit on the generating centers.
  const auto fs = rdi::generate_mixture(spec_of(4, 6, 3, 2.5, 1e-12, 9));
  const auto stats = rdi::compute_class_statistics(fs);
  for (const auto& s : stats) EXPECT_NEAR(s.center.norm(), 2.5, 1e-9);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (std::size_t j = i + 1; j < stats.size(); ++j) {
      EXPECT_NEAR(stats[i].center.dot(stats[j].center), 0.0, 1e-9);
    }
  }
}

TEST(GenerateMixture, TinySpreadGivesRdiNearOne) {
  const auto r = rdi::compute_rdi(rdi::generate_mixture(spec_of(5, 8, 20, 1.0, 1e-9, 7)));
  EXPECT_NEAR(r.rdi, 1.0, 1e-6);
}

TEST(GenerateMixture, RdiIncreasesWithSeparation) {
  double previous = -2.0;
  for (double sep : {1.0, 2.0, 4.0, 8.0}) {
    const double r = rdi::compute_rdi(rdi::generate_mixture(spec_of(6, 10, 40, sep, 1.0, 3))).rdi;
    EXPECT_GT(r, previous) << "separation " << sep;
    previous = r;
  }
}

TEST(GenerateMixture, InvalidSpecRejected) {
  EXPECT_THROW(rdi::generate_mixture(spec_of(1, 4, 5, 1, 1, 0)), rdi::InvalidInput);
  EXPECT_THROW(rdi::generate_mixture(spec_of(3, 1, 5, 1, 1, 0)), rdi::InvalidInput);
  EXPECT_THROW(rdi::generate_mixture(spec_of(3, 4, 0, 1, 1, 0)), rdi::InvalidInput);
  EXPECT_THROW(rdi::generate_mixture(spec_of(3, 4, 5, 0, 1, 0)), rdi::InvalidInput);
  EXPECT_THROW(rdi::generate_mixture(spec_of(3, 4, 5, 1, -1, 0)), rdi::InvalidInput);
}

TEST(ContractTowardCenters, AlphaOneIsIdentity) {
  std::mt19937_64 rng(4);
  const auto fs = testgen::random_feature_set(rng, 100, 5, 4);
  const auto out = rdi::contract_toward_centers(fs, 1.0);
  EXPECT_TRUE(out.vectors == fs.vectors);
  EXPECT_EQ(out.labels, fs.labels);
}

TEST(ContractTowardCenters, HandCaseRisesToThreeQuarters) {
  rdi::FeatureSet fs;
  fs.num_classes = 2;
  fs.vectors.resize(4, 2);
  fs.vectors << 0, 0, 2, 0, 4, 0, 6, 0;
  fs.labels = {0, 0, 1, 1};
  const auto r = rdi::compute_rdi(rdi::contract_toward_centers(fs, 0.5));
  EXPECT_NEAR(r.intra_d, 0.5, 1e-12);
  EXPECT_NEAR(r.inter_d, 2.0, 1e-12);
  EXPECT_NEAR(r.rdi, 0.75, 1e-12);
}

TEST(ContractTowardCenters, CentersPreservedAndRdiRises) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto fs = testgen::random_feature_set(rng, 150, 12, 8);
    const auto out = rdi::contract_toward_centers(fs, 0.5);
    const auto before = rdi::compute_rdi(fs);
    const auto after = rdi::compute_rdi(out);
    for (std::size_t k = 0; k < before.per_class.size(); ++k) {
      EXPECT_TRUE(before.per_class[k].center.isApprox(after.per_class[k].center, 1e-9) ||
                  (before.per_class[k].center - after.per_class[k].center).norm() < 1e-9);
    }
    EXPECT_NEAR(after.intra_d, 0.5 * before.intra_d, 1e-9);
    if (before.intra_d > 0 && before.inter_d > 0) EXPECT_GT(after.rdi, before.rdi);
  }
}

TEST(ContractTowardCenters, AlphaOutOfRangeRejected) {
  std::mt19937_64 rng(4);
  const auto fs = testgen::random_feature_set(rng, 20, 3, 3);
  EXPECT_THROW(rdi::contract_toward_centers(fs, 0.0), rdi::InvalidInput);
  EXPECT_THROW(rdi::contract_toward_centers(fs, 1.5), rdi::InvalidInput);
  EXPECT_THROW(rdi::contract_toward_centers(fs, -0.1), rdi::InvalidInput);
}
