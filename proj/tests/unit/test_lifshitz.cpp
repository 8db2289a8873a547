#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;
using namespace casimir::lifshitz;

namespace {
const auto& gold() {
  static const auto m = materials::MaterialCatalog::builtin().at("Gold");
  return m;
}
}  // namespace

TEST(Lifshitz, IdealMetalZeroTemperaturePressure) {
  for (double x : {50e-9, 100e-9, 200e-9}) {
    const double p = casimir_pressure({PerfectConductor{}, PerfectConductor{}, x, 0.0});
    EXPECT_NEAR(p / oracle::ideal_metal_pressure(x), 1.0, 1e-3) << x;
  }
}

TEST(Lifshitz, IdealMetalZeroTemperatureEnergy) {
  const double x = 100e-9;
  const double e = casimir_energy({PerfectConductor{}, PerfectConductor{}, x, 0.0});
  EXPECT_NEAR(e / (-constants::pi * constants::pi * constants::hbar * constants::c / (720.0 * std::pow(x, 3))), 1.0,
              1e-4);
}

TEST(Lifshitz, GoldEnergyMatchesTrapezoidOracle) {
  for (double x : {99e-9, 154e-9, 300e-9}) {
    const double e = casimir_energy({gold(), gold(), x, 300.0});
    EXPECT_LT(e, 0.0);
    EXPECT_NEAR(e / oracle::energy_trapezoid(gold(), x, 300.0), 1.0, 5e-3) << x;
  }
}

TEST(Lifshitz, GoldenGradients) {
  // Frozen from this implementation (300 K, R = 35 um); guards regressions.
  const SphereGeometry sphere{35e-6};
  EXPECT_NEAR(force_gradient({gold(), gold(), 154e-9, 300.0}, sphere) / -2.72561e-4, 1.0, 1e-4);
  EXPECT_NEAR(force_gradient({gold(), gold(), 99e-9, 300.0}, sphere) / -1.28376e-3, 1.0, 1e-4);
}

TEST(Lifshitz, GradientMatchesFiniteDifference) {
  const SphereGeometry sphere{35e-6};
  for (double x : {100e-9, 200e-9}) {
    const double h = 1e-3 * x;
    const double fp = pfa_force({gold(), gold(), x + h, 300.0}, sphere);
    const double fm = pfa_force({gold(), gold(), x - h, 300.0}, sphere);
    EXPECT_NEAR(force_gradient({gold(), gold(), x, 300.0}, sphere) / ((fp - fm) / (2 * h)), 1.0, 1e-4) << x;
  }
}

TEST(Lifshitz, PressureIsMinusEnergyDerivative) {
  const double x = 154e-9, h = 1e-3 * x;
  const double de = casimir_energy({gold(), gold(), x + h, 300.0}) - casimir_energy({gold(), gold(), x - h, 300.0});
  EXPECT_NEAR(casimir_pressure({gold(), gold(), x, 300.0}) / (-de / (2 * h)), 1.0, 1e-4);
}

TEST(Lifshitz, ZeroMatsubaraTermHasHalfWeight) {
  const PlatePairConfig cfg{gold(), gold(), 154e-9, 300.0};
  double sum = 0.5 * matsubara_energy_term(cfg, 0);
  for (std::size_t l = 1; l < 400; ++l) sum += matsubara_energy_term(cfg, l);
  EXPECT_NEAR(sum / casimir_energy(cfg), 1.0, 1e-6);
  // Drude TM reflection is 1 at xi = 0, TE vanishes.
  const auto r = reflection_imag_axis(gold(), 0.0, 1e7);
  EXPECT_EQ(r.tm, 1.0);
  EXPECT_NEAR(r.te, 0.0, 1e-12);
}

TEST(Lifshitz, PerfectConductorThermalLimitTerm) {
  // Un-primed l = 0 term of two ideal mirrors: -kT zeta(3) / (4 pi x^2).
  const double x = 1e-6, T = 300.0;
  const double t0 = matsubara_energy_term({PerfectConductor{}, PerfectConductor{}, x, T}, 0);
  EXPECT_NEAR(t0 / (-constants::k_B * T * 1.2020569031595942 / (4.0 * constants::pi * x * x)), 1.0, 1e-6);
}

TEST(Lifshitz, MagnitudeDecreasesWithSeparation) {
  const SphereGeometry sphere{35e-6};
  double prev = INFINITY;
  for (double x : {90e-9, 120e-9, 160e-9, 220e-9, 300e-9}) {
    const double g = std::abs(force_gradient({gold(), gold(), x, 300.0}, sphere));
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Lifshitz, PreconditionsAndPfaRange) {
  EXPECT_THROW(casimir_energy({gold(), gold(), 0.0, 300.0}), DomainError);
  EXPECT_THROW(casimir_energy({gold(), gold(), 1e-7, -1.0}), DomainError);
  EXPECT_TRUE(pfa_valid(154e-9, {35e-6}));
  EXPECT_FALSE(pfa_valid(2e-6, {35e-6}));
}
