#include <gtest/gtest.h>

#include "qprobe/tradeoff.hpp"
#include "test_helpers.hpp"

namespace qprobe {
namespace {

const Effect kIdentity{1.0, {0, 0, 0}, std::nullopt};
const Effect kHalf{0.5, {0, 0, 0}, std::nullopt};
const Effect kProjector{0.5, {0.5, 0, 0}, std::nullopt};

TEST(FidelityF, FixedPoints) {
  EXPECT_NEAR(fidelity_F(kIdentity), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_F(kProjector), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(fidelity_F(kHalf), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_F_matrix(kHalf), 1.0, 1e-12);
}

TEST(FidelityF, EigenvalueAndMatrixFormulasAgree) {
  test::Rng rng(30);
  for (int trial = 0; trial < 2000; ++trial) {
    const Effect e = rng.effect();
    const double f = fidelity_F(e);
    EXPECT_NEAR(f, fidelity_F_matrix(e), 1e-12);
    EXPECT_NEAR(f, fidelity_F_sphere_identity(e), 1e-12);
    EXPECT_GE(f, 2.0 / 3.0 - 1e-12);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(FidelityF, RejectsInvalidEffect) {
  EXPECT_THROW(fidelity_F({0.9, {0.3, 0, 0}, std::nullopt}), InvalidEffect);
  EXPECT_THROW(fidelity_G({0.2, {0.3, 0, 0}, std::nullopt}), InvalidEffect);
}

TEST(FidelityG, FixedPoints) {
  EXPECT_NEAR(fidelity_G(kIdentity).G, 0.5, 1e-12);
  EXPECT_NEAR(fidelity_G(kProjector).G, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(fidelity_G(kHalf).G, 0.5, 1e-12);
}

TEST(FidelityG, EigenvectorPathMatchesClosedForm) {
  test::Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const Effect e = rng.effect();
    const auto info = fidelity_G(e);
    EXPECT_NEAR(info.G, fidelity_G_closed(e), 1e-12);
    EXPECT_GE(info.G, 0.5 - 1e-12);
    EXPECT_LE(info.G, 2.0 / 3.0 + 1e-12);
    // The guess states are top eigenvectors of Pi and I - Pi.
    const CMat2 pi = e.to_matrix();
    EXPECT_NEAR(expectation(pi, info.states.phi0).real(), e.a0 + e.abs_a(), 1e-12);
    EXPECT_NEAR(expectation(CMat2::identity() - pi, info.states.phi1).real(), 1.0 - e.a0 + e.abs_a(), 1e-12);
  }
}

TEST(TradeoffT, Examples) {
  const auto noinfo = tradeoff_T(0.5, 1.0);
  EXPECT_NEAR(noinfo.value, 1.0 / 9.0, 1e-15);
  EXPECT_TRUE(noinfo.saturated);
  const auto projective = tradeoff_T(2.0 / 3.0, 2.0 / 3.0);
  EXPECT_NEAR(projective.value, 1.0 / 9.0, 1e-15);
  EXPECT_TRUE(projective.saturated);
  const auto interior = tradeoff_T(0.5, 2.0 / 3.0);
  EXPECT_EQ(interior.value, 0.0);
  EXPECT_FALSE(interior.saturated);
}

TEST(TradeoffT, SaturatedWheneverA0IsHalf) {
  test::Rng rng(32);
  for (int trial = 0; trial < 2000; ++trial) {
    Effect e = rng.effect();
    const double r = std::min(e.abs_a(), 0.5);
    e.a0 = 0.5;
    e.a = {0.0, 0.0, r};
    EXPECT_NEAR(evaluate_tradeoff(e).T, 1.0 / 9.0, 1e-12);
  }
}

TEST(TradeoffT, NeverExceedsBound) {
  test::Rng rng(33);
  for (int trial = 0; trial < 20000; ++trial) EXPECT_LE(evaluate_tradeoff(rng.effect()).T, 1.0 / 9.0 + 1e-10);
}

TEST(Tradeoff, MonotoneInBlochLength) {
  for (double a0 = 0.05; a0 <= 0.951; a0 += 0.05) {
    const double rmax = std::min(a0, 1.0 - a0);
    double prev_f = 2.0, prev_g = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const Effect e{a0, {0, 0, rmax * k / 50.0}, std::nullopt};
      const double f = fidelity_F(e), g = fidelity_G_closed(e);
      EXPECT_LE(f, prev_f + 1e-15);
      EXPECT_GE(g, prev_g - 1e-15);
      prev_f = f;
      prev_g = g;
    }
  }
}

TEST(Tradeoff, InvariantUnderOutcomeRelabeling) {
  test::Rng rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    const Effect e = rng.effect();
    const auto p = evaluate_tradeoff(e);
    const auto q = evaluate_tradeoff(e.complement());
    EXPECT_NEAR(p.F, q.F, 1e-12);
    EXPECT_NEAR(p.G, q.G, 1e-12);
    EXPECT_NEAR(p.T, q.T, 1e-12);
    EXPECT_NEAR(fidelity_G(e).G, fidelity_G(e.complement()).G, 1e-12);
  }
}

TEST(MonteCarlo, DeterministicOutcomeIsExact) {
  const auto f = mc_fidelity_F(kIdentity, 10000, 7);
  EXPECT_EQ(f.mean, 1.0);
  EXPECT_EQ(f.std_error, 0.0);
  EXPECT_EQ(f.n_samples, 10000u);
  const auto g = mc_fidelity_G(kIdentity, 200000, 7);
  EXPECT_LE(std::abs(g.mean - 0.5), 5.0 * g.std_error);
}

TEST(MonteCarlo, ProjectorAtOneMillion) {
  const auto f = mc_fidelity_F(kProjector, 1000000, 11);
  const auto g = mc_fidelity_G(kProjector, 1000000, 12);
  EXPECT_LE(std::abs(f.mean - 2.0 / 3.0), 5.0 * f.std_error);
  EXPECT_LE(std::abs(g.mean - 2.0 / 3.0), 5.0 * g.std_error);
  EXPECT_GT(f.std_error, 0.0);
}

TEST(MonteCarlo, RandomEffectsAgreeWithClosedForm) {
  test::Rng rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    const Effect e = rng.effect();
    const auto f = mc_fidelity_F(e, 1000000, 100 + trial);
    const auto g = mc_fidelity_G(e, 1000000, 200 + trial);
    EXPECT_LE(std::abs(f.mean - fidelity_F(e)), 5.0 * f.std_error);
    EXPECT_LE(std::abs(g.mean - fidelity_G_closed(e)), 5.0 * g.std_error);
  }
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  const Effect e{0.4, {0.1, -0.2, 0.15}, std::nullopt};
  const std::uint64_t n = 3 * kMCBlockSize + 17;
  const auto one = mc_fidelity_G(e, n, 5, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = mc_fidelity_G(e, n, 5, threads);
    EXPECT_EQ(one.mean, many.mean);
    EXPECT_EQ(one.std_error, many.std_error);
  }
  EXPECT_NE(one.mean, mc_fidelity_G(e, n, 6, 1).mean);
}

TEST(MonteCarlo, SingleSampleAndErrors) {
  const auto one = mc_fidelity_F(kProjector, 1, 3);
  EXPECT_EQ(one.n_samples, 1u);
  EXPECT_EQ(one.std_error, 0.0);
  EXPECT_THROW(mc_fidelity_F(kProjector, 0, 3), std::invalid_argument);
  EXPECT_THROW(mc_fidelity_G({0.9, {0.3, 0, 0}, std::nullopt}, 10, 3), InvalidEffect);
}

}  // namespace
}  // namespace qprobe
