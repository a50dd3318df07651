#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kds/analytic.hpp"

using kds::Mode;
using kds::SingleModeVariant;
using kds::SystemParams;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_fg(const kds::QuadraturePair& got, double f, double g, double tol) {
  EXPECT_NEAR(got.f, f, tol);
  EXPECT_NEAR(got.g, g, tol);
}

}  // namespace

TEST(Analytic, InitialTimeIsZero) {
  const SystemParams p(0.5, 0.1, 0.4, 0.3);
  for (auto kind : {kds::SqueezeKind::single(Mode::One), kds::SqueezeKind::single(Mode::Two),
                    kds::SqueezeKind::two_mode(), kds::SqueezeKind::sum()}) {
    expect_fg(kds::analytic_fg(p, 0.0, kind), 0.0, 0.0, 1e-15);
  }
}

TEST(Analytic, PureKerrSingleMode) {
  // alpha2 = 0, k = 0: F = 2 a^2 [e^{-2a^2 s^2(2 chi t)} cos(2 chi t + a^2 sin 4 chi t) - 2 e^{-4 a^2 sin^2 chi t} cos^2(a^2 sin 2 chi t)]
  // plus 2 a^2 from the number term.
  const double a = 0.4, chi = 0.5;
  for (double t : {0.3, 1.0, 2.2}) {
    const double a2 = a * a, ct = chi * t;
    const double f_ref = 2 * a2 +
                         2 * a2 * std::exp(-2 * a2 * std::pow(std::sin(2 * ct), 2)) *
                             std::cos(2 * ct + a2 * std::sin(4 * ct)) -
                         4 * a2 * std::exp(-4 * a2 * std::pow(std::sin(ct), 2)) *
                             std::pow(std::cos(a2 * std::sin(2 * ct)), 2);
    EXPECT_NEAR(kds::single_mode_fg(SystemParams(chi, 0.0, a, 0.0), t, Mode::One).f, f_ref, 1e-14);
  }
}

TEST(Analytic, NoSingleModeSqueezingWithoutKerr) {
  for (double t : {0.0, 0.7, 3.0}) {
    const double s = std::sinh(0.1 * t);
    for (const auto& [a1, a2] : {std::pair{0.4, 0.0}, std::pair{0.4, 0.4}, std::pair{0.2, 0.3}}) {
      const SystemParams p(0.0, 0.1, a1, a2);
      expect_fg(kds::single_mode_fg(p, t, Mode::One), 2 * s * s, 2 * s * s, 1e-10);
      expect_fg(kds::single_mode_fg(p, t, Mode::Two), 2 * s * s, 2 * s * s, 1e-10);
    }
  }
}

// Reference values from an independent Fock-space evaluation.
TEST(Analytic, FrozenOracleSpotValues) {
  expect_fg(kds::single_mode_fg(SystemParams(0.5, 0.0, 0.4, 0.0), kPi, Mode::One), -0.337467151387551, 0.64, 1e-12);
  EXPECT_NEAR(-0.64 * std::exp(-0.64), -0.337467151387551, 1e-12);
  expect_fg(kds::single_mode_fg(SystemParams(0.5, 0.0, 0.4, 0.4), kPi, Mode::One), -0.177943872290044, 0.64, 1e-12);
  expect_fg(kds::single_mode_fg(SystemParams(0.5, 0.01, 0.4, 0.4), kPi, Mode::One), -0.165132763432731,
            0.683477145268399, 1e-12);
  expect_fg(kds::single_mode_fg(SystemParams(0.5, 0.1, 0.4, 0.0), 2.0, Mode::Two), 0.0983250930225084,
            0.0732730268510292, 1e-12);
  expect_fg(kds::two_mode_fg(SystemParams(0.5, 0.1, 0.4, 0.4), 1.5), -0.0671028376445664, 0.520103207711001, 1e-12);
  expect_fg(kds::two_mode_fg(SystemParams(0.25, 0.05, 0.2, 0.3), 2.5), -0.0172210449932707, 0.100613585851484,
            1e-12);
  expect_fg(kds::two_mode_fg(SystemParams(0.0, 0.1, 0.4, 0.0), 3.0), 0.82211880039051, -0.451188363905974, 1e-12);
  expect_fg(kds::sum_fg(SystemParams(0.5, 0.1, 0.4, 0.0), 2.0), -0.218371446345601, 0.354643779201332, 1e-12);
  expect_fg(kds::sum_fg(SystemParams(0.5, 0.1, 0.2, 0.3), 1.0), -0.099167093826407, 0.13702349383781, 1e-12);
  expect_fg(kds::sum_fg(SystemParams(0.5, 0.1, 0.2, 0.3), 1.0, kds::SumConvention::CommutatorConsistent),
            -0.0149012194456146, 0.0205896640921661, 1e-12);
}

TEST(Analytic, ExtremumReduction) {
  for (double k : {0.0, 0.01, 0.1}) {
    for (int m : {1, 3, 5}) {
      const SystemParams p(0.5, k, 0.4, 0.4);
      const double t = m * kPi / 2 / 0.5;
      const auto ext = kds::single_mode_extremum(p, t);
      const auto full = kds::single_mode_fg(p, t, Mode::One);
      EXPECT_NEAR(ext.f, full.f, 1e-12);
      EXPECT_NEAR(ext.g, full.g, 1e-12);
    }
  }
  const auto at_k0 = kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.4), kPi);
  EXPECT_NEAR(at_k0.f, -0.64 * std::exp(-1.28), 1e-15);
  EXPECT_NEAR(at_k0.g, 0.64, 1e-15);
  // The printed exponent gives -0.64 e^{-0.64}, which the exact moments do not reproduce.
  const auto printed = kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.4), kPi, kds::PrintedForm::Printed);
  EXPECT_NEAR(printed.f, -0.64 * std::exp(-0.64), 1e-15);
  EXPECT_GT(std::abs(printed.f - at_k0.f), 0.1);
  expect_fg(kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.0, 0.0), kPi), 0.0, 0.0, 0.0);
}

TEST(Analytic, ExtremumPreconditions) {
  EXPECT_THROW(kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.3), kPi), kds::AsymmetricAmplitudes);
  EXPECT_THROW(kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.4), 1.0), kds::NotAnExtremumTime);
  EXPECT_THROW(kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.4), 2 * kPi), kds::NotAnExtremumTime);
  EXPECT_THROW(kds::single_mode_extremum(SystemParams(0.5, 0.0, 0.4, 0.4), -kPi), kds::InvalidParameter);
}

TEST(Analytic, TwoModeKerrReduction) {
  for (int m : {1, 2, 3}) {
    for (const auto& [a1, a2] : {std::pair{0.4, 0.0}, std::pair{0.4, 0.4}, std::pair{0.2, 0.3}}) {
      const SystemParams p(0.5, 0.0, a1, a2);
      const double t = m * kPi / 0.5;
      const auto red = kds::two_mode_kerr_reduction(p, t);
      const auto full = kds::two_mode_fg(p, t);
      EXPECT_NEAR(red.f, full.f, 1e-12);
      EXPECT_NEAR(red.g, full.g, 1e-12);
    }
  }
  EXPECT_THROW(kds::two_mode_kerr_reduction(SystemParams(0.5, 0.1, 0.4, 0.0), 2 * kPi), kds::InvalidParameter);
  EXPECT_THROW(kds::two_mode_kerr_reduction(SystemParams(0.5, 0.0, 0.4, 0.0), 1.0), kds::NotAnExtremumTime);
}

TEST(Analytic, SumReducesToPureGain) {
  for (double t : {0.0, 0.5, 1.5, 3.0}) {
    for (const auto& [a1, a2] : {std::pair{0.4, 0.0}, std::pair{0.4, 0.4}, std::pair{0.2, 0.3}}) {
      for (auto conv : {kds::SumConvention::NumberSum, kds::SumConvention::CommutatorConsistent}) {
        const SystemParams p(0.0, 0.1, a1, a2);
        EXPECT_NEAR(kds::sum_fg(p, t, conv).g, kds::sum_g_pure_gain(p, t, conv), 1e-12);
      }
    }
  }
  // Monotonically deepening Y squeezing for the pure amplifier.
  double last = 0.0;
  for (double t = 0.1; t <= 3.0; t += 0.1) {
    const double g = kds::sum_g_pure_gain(SystemParams(0.0, 0.1, 0.4, 0.0), t);
    EXPECT_LT(g, last);
    last = g;
  }
  // The printed closed form carries S^2 C^2 where the exact result has S^2.
  const SystemParams p(0.0, 0.1, 0.4, 0.0);
  EXPECT_GT(std::abs(kds::sum_g_pure_gain(p, 3.0, kds::SumConvention::NumberSum, kds::PrintedForm::Printed) -
                     kds::sum_g_pure_gain(p, 3.0)),
            1e-3);
}

TEST(Analytic, SumWithoutGainIsMinimumUncertainty) {
  for (double chi : {0.0, 0.25, 0.5}) {
    for (double t = 0.0; t <= 3.0; t += 0.5) {
      expect_fg(kds::sum_fg(SystemParams(chi, 0.0, 0.4, 0.4), t), 0.0, 0.0, 1e-12);
    }
  }
}

TEST(Analytic, SumDegenerateDenominator) {
  EXPECT_THROW(kds::sum_fg(SystemParams(0.5, 0.0, 0.0, 0.0), 1.0), kds::DegenerateDenominator);
  EXPECT_THROW(kds::sum_g_pure_gain(SystemParams(0.0, 0.1, 0.0, 0.0), 0.0), kds::DegenerateDenominator);
  EXPECT_NO_THROW(kds::sum_fg(SystemParams(0.5, 0.0, 0.0, 0.0), 1.0, kds::SumConvention::CommutatorConsistent));
}

TEST(Analytic, VariantsAgreeWhenTheTermVanishes) {
  // alpha2 = 0 removes the contested alpha2^2 S^2 term; the exponent variants still differ.
  const SystemParams p(0.5, 0.1, 0.4, 0.0);
  const auto a = kds::single_mode_fg(p, 1.3, Mode::One, SingleModeVariant::Corrected);
  const auto b = kds::single_mode_fg(p, 1.3, Mode::One, SingleModeVariant::SinTheta);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.g, b.g);
  const SystemParams q(0.5, 0.1, 0.4, 0.4);
  EXPECT_GT(std::abs(kds::single_mode_fg(q, 2.0, Mode::One, SingleModeVariant::SinTheta).f -
                     kds::single_mode_fg(q, 2.0, Mode::One).f),
            1e-3);
}
