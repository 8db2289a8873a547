#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/dynamics.hpp"
#include "casimir/error.hpp"

using namespace casimir;
using namespace casimir::dynamics;
using constants::hz;

namespace {
CoupledSystem operating_system(double J = 4.88564e-4, double gamma2 = hz(41.6)) {
  const auto c1 = CantileverParams::make(1.9e-10, hz(4564.7), hz(3.7));
  const auto c2 = CantileverParams::make(1.2e-10, hz(4548.9), gamma2);
  return shifted_frequencies(c1, c2, -J);
}
}  // namespace

TEST(Dynamics, ShiftedFrequencies) {
  const auto s = operating_system();
  EXPECT_NEAR(s.omega1p, s.c1.omega0 * std::sqrt(1.0 - s.J / s.c1.k), 1e-9);
  EXPECT_NEAR(s.omega2p, s.c2.omega0 * std::sqrt(1.0 - s.J / s.c2.k), 1e-9);
  EXPECT_NEAR(s.j_norm, s.J / std::sqrt(s.c1.m * s.c2.m), 1e-12);
}

TEST(Dynamics, SnapInWhenGradientExceedsStiffness) {
  const auto c1 = CantileverParams::make(1.9e-10, hz(4564.7), hz(3.7));
  const auto c2 = CantileverParams::make(1.2e-10, hz(4548.9), hz(6.7));
  EXPECT_THROW(shifted_frequencies(c1, c2, -1.1 * c2.k), SnapIn);
}

TEST(Dynamics, SteadyStateSolvesEquationsOfMotion) {
  const auto s = operating_system();
  for (double f : {4500.0, 4521.0, 4560.0}) {
    const DriveConfig drive{1e-12, hz(f)};
    const auto ss = steady_state(s, drive);
    const double w = drive.omega_d;
    const complex r1 = (s.omega1p * s.omega1p - w * w + complex(0, s.c1.gamma0 * w)) * ss.X1 - s.J / s.c1.m * ss.X2 -
                       drive.F0 / s.c1.m;
    const complex r2 = (s.omega2p * s.omega2p - w * w + complex(0, s.c2.gamma0 * w)) * ss.X2 - s.J / s.c2.m * ss.X1;
    EXPECT_LT(std::abs(r1) / (drive.F0 / s.c1.m), 1e-10);
    EXPECT_LT(std::abs(r2) / (s.J / s.c2.m * std::abs(ss.X1)), 1e-10);
  }
}

TEST(Dynamics, ForceSplitSumsToCouplingForce) {
  const auto s = operating_system();
  const DriveConfig drive{1e-12, hz(4511.0)};
  const auto ss = steady_state(s, drive);
  const complex iw(0.0, drive.omega_d);
  for (int k = 0; k < 16; ++k) {
    const auto e = std::exp(iw * (k / 16.0) * constants::two_pi / drive.omega_d);
    const double x1 = (ss.X1 * e).real(), v1 = (iw * ss.X1 * e).real(), x2 = (ss.X2 * e).real();
    const auto f = force_split(s, drive, x1, v1);
    EXPECT_NEAR(f.F_conservative + f.F_CF, s.J * x2, 1e-10 * std::abs(s.J * ss.X2));
    EXPECT_NEAR(f.F_couple, s.J * x2, 1e-10 * std::abs(s.J * ss.X2));
  }
}

TEST(Dynamics, FrictionDampingMatchesForceOverVelocity) {
  const auto s = operating_system();
  const DriveConfig drive{1e-12, s.omega2p};
  const auto f = force_split(s, drive, 0.0, 1e-4);
  EXPECT_NEAR(-f.F_CF / (s.c1.m * 1e-4), gamma_cf(s, drive.omega_d), 1e-12);
  EXPECT_NEAR(f.phase, 0.0, 1e-12);
  // Resonant drive: J^2 / (m1 m2 g2 w2'^2).
  EXPECT_NEAR(gamma_cf(s, s.omega2p), s.J * s.J / (s.c1.m * s.c2.m * s.c2.gamma0 * s.omega2p * s.omega2p), 1e-9);
}

TEST(Dynamics, CouplingPhaseIsAngleOfForceAgainstMinusVelocity) {
  const auto s = operating_system();
  for (double det : {0.0, -10.0, -21.0, 8.0}) {
    const double w = s.omega2p + hz(det);
    const auto ss = steady_state(s, {1e-12, w});
    const double measured = std::arg(s.J * ss.X2 / (-complex(0.0, w) * ss.X1));
    EXPECT_NEAR(measured, coupling_phase(s, w), 1e-12) << det;
  }
  EXPECT_NEAR(coupling_phase(s, s.omega2p - hz(21.0)) * 180.0 / constants::pi, 45.3, 0.1);
}

TEST(Dynamics, FrictionMetricsGeometry) {
  const auto m = friction_metrics(3.4e-12, 3.8e-4, 1.9e-10, 35e-6, 154e-9);
  EXPECT_NEAR(m.area, 2.0 / 3.0 * constants::pi * 35e-6 * 154e-9, 1e-24);
  EXPECT_NEAR(m.area, 1.13e-11, 0.01e-11);
  EXPECT_NEAR(m.Gamma_CF, m.sigma_CF / 3.8e-4, 1e-9);
  EXPECT_NEAR(m.gamma_CF, 3.4e-12 / (1.9e-10 * 3.8e-4), 1e-9);
  EXPECT_THROW(friction_metrics(0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(Dynamics, UncoupledModesKeepNaturalDamping) {
  const auto c1 = CantileverParams::make(1.9e-10, hz(4564.7), hz(3.7));
  const auto c2 = CantileverParams::make(1.2e-10, hz(4548.9), hz(41.6));
  const auto m = effective_damping(shifted_frequencies(c1, c2, 0.0));
  EXPECT_NEAR(m.gamma1, hz(3.7), 1e-9);
  EXPECT_NEAR(m.gamma2, hz(41.6), 1e-9);
}

TEST(Dynamics, ModeDampingSumRule) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double g2 = hz(5.0 + 90.0 * u(rng));
    const auto s = operating_system(1e-4 + 1.2e-3 * u(rng), g2);
    const auto m = mode_damping(s);
    EXPECT_NEAR((m.gamma1 + m.gamma2) / (s.c1.gamma0 + s.c2.gamma0), 1.0, 1e-10);
    EXPECT_GE(m.gamma1, s.c1.gamma0 * (1.0 - 1e-12));
  }
}

TEST(Dynamics, WeakCouplingMatchesPerturbation) {
  // To first order, the cantilever-1 mode gains gamma_CF evaluated at its own frequency.
  const auto s = operating_system(2e-5);
  const auto m = effective_damping(s);
  EXPECT_NEAR((m.gamma1 - s.c1.gamma0) / gamma_cf(s, s.omega1p), 1.0, 0.02);
}

TEST(Dynamics, DegenerateStrongCouplingIsAmbiguous) {
  const auto c1 = CantileverParams::make(1.5e-10, hz(4550.0), hz(20.0));
  const auto c2 = CantileverParams::make(1.5e-10, hz(4550.0), hz(20.0));
  const auto s = shifted_frequencies(c1, c2, -5e-4);
  EXPECT_TRUE(mode_damping(s).ambiguous);
  EXPECT_THROW(effective_damping(s), ModeAmbiguity);
}

TEST(Dynamics, CouplingCalibrationRoundTrip) {
  const double gcf = hz(7.9), g2 = hz(41.6), w2p = hz(4521.0);
  const double J = coupling_for_gamma_cf(gcf, g2, w2p, 1.9e-10, 1.2e-10);
  const auto c1 = CantileverParams::make(1.9e-10, hz(4564.7), hz(3.7));
  const auto c2 = CantileverParams::make(1.2e-10, bare_frequency_for_shifted(w2p, J, 1.2e-10), g2);
  const auto s = shifted_frequencies(c1, c2, -J);
  EXPECT_NEAR(s.omega2p / w2p, 1.0, 1e-12);
  EXPECT_NEAR(gamma_cf(s, w2p) / gcf, 1.0, 1e-12);
}
