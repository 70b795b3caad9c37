#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "povm/discrimination.hpp"
#include "povm/sampler.hpp"

using namespace povm;

namespace {
PovmSet von_neumann_z() { return PovmSet({{1.0, {0, 0, 1}}, {1.0, {0, 0, -1}}}); }
}  // namespace

TEST(Sampler, DeterministicOutcome) {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 0xffffffffffffffffull}) {
    const SampleReport rep = sample_outcomes(von_neumann_z(), BlochState({0, 0, 1}), 1000, seed);
    EXPECT_EQ(rep.counts, (std::vector<std::uint64_t>{1000, 0}));
    EXPECT_EQ(rep.seed, seed);
    EXPECT_EQ(rep.max_abs_deviation, 0.0);
  }
}

TEST(Sampler, SingleTrial) {
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const PovmSet set = gen::povm_set(rng, 2 + i % 7);
    const SampleReport rep = sample_outcomes(set, gen::state(rng), 1, i);
    EXPECT_EQ(std::accumulate(rep.counts.begin(), rep.counts.end(), std::uint64_t{0}), 1u);
    EXPECT_EQ(std::count(rep.counts.begin(), rep.counts.end(), 1u), 1);
  }
}

TEST(Sampler, SameSeedSameReport) {
  const UsdDesign d = design_usd(Vec3::unit_z(), Vec3::unit_x());
  const BlochState psi(d.r_psi);
  const SampleReport a = sample_outcomes(d.povm, psi, 10000, 7);
  const SampleReport b = sample_outcomes(d.povm, psi, 10000, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.counts, sample_outcomes(d.povm, psi, 10000, 8).counts);
}

TEST(Sampler, CountsSumToTrials) {
  gen::Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    const SampleReport rep = sample_outcomes(gen::povm_set(rng, 2 + i % 7), gen::state(rng), 1000, i);
    EXPECT_EQ(std::accumulate(rep.counts.begin(), rep.counts.end(), std::uint64_t{0}), 1000u);
    EXPECT_EQ(rep.frequencies.size(), rep.counts.size());
  }
}

TEST(Sampler, ZeroProbabilityNeverSampled) {
  // Middle outcome has probability exactly zero; trailing one is certain.
  const PovmSet set({{1.0, {0, 0, 1}}, {0.0, {}}, {1.0, {0, 0, -1}}});
  const SampleReport rep = sample_outcomes(set, BlochState({0, 0, -1}), 100000, 3);
  EXPECT_EQ(rep.counts, (std::vector<std::uint64_t>{0, 0, 100000}));
}

TEST(Sampler, PickOutcomeResidualMass) {
  // Cumulative sums that fall short of 1 still yield the last live outcome.
  const std::vector<double> cumulative{0.5, 1.0 - 1e-12, 1.0 - 1e-12};
  EXPECT_EQ(detail::pick_outcome(cumulative, 1, 0.999999999999999), 1u);
  EXPECT_EQ(detail::pick_outcome(cumulative, 1, 0.25), 0u);
  EXPECT_EQ(detail::pick_outcome(cumulative, 1, 0.5), 1u);
}

TEST(Sampler, UsdStatistics) {
  const UsdDesign d = design_usd(Vec3::unit_z(), Vec3::unit_x());
  const std::uint64_t n = 1000000;
  const SampleReport rep = sample_outcomes(d.povm, BlochState(d.r_psi), n, 20261014);
  EXPECT_EQ(rep.counts[kDetectPhi], 0u);
  const double p = 0.292893218813452;
  EXPECT_LE(std::fabs(rep.frequencies[kDetectPsi] - p), 5.0 * std::sqrt(p * (1 - p) / n));
}

TEST(Sampler, Errors) {
  EXPECT_THROW(sample_outcomes(von_neumann_z(), BlochState(Vec3{}), 0, 1), Error);
  try {
    sample_outcomes(PovmSet({{1.0, {0, 0, 1}}, {1.0, {0, 0, 1}}}), BlochState(Vec3{}), 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSet);
  }
}
