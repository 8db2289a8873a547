#include <gtest/gtest.h>

#include <cmath>
#include <iostream>

#include "../support/oracles.hpp"
#include "casimir/error.hpp"
#include "casimir/friction.hpp"

using namespace casimir;
using namespace casimir::friction;

namespace {
SlidingConfig config(const std::string& name, double v_over_V0, double d = 100e-9, double T = 300.0) {
  const auto m = materials::MaterialCatalog::builtin().at(name);
  return {m, m, d, v_over_V0 * materials::critical_velocity(m, d), T, T, false};
}
}  // namespace

TEST(Bose, OccupationLimits) {
  EXPECT_EQ(bose_occupation(1e13, 0.0), 0.0);
  EXPECT_EQ(bose_occupation(-1e13, 0.0), -1.0);
  const double w = 3e13, T = 300.0;
  EXPECT_NEAR(bose_occupation(w, T), 1.0 / std::expm1(constants::hbar * w / (constants::k_B * T)), 1e-15);
  EXPECT_NEAR(bose_occupation(-w, T), -1.0 - bose_occupation(w, T), 1e-15);
}

TEST(Friction, VanishesAtRest) { EXPECT_EQ(friction_stress(config("BST", 0.0)), 0.0); }

TEST(Friction, OddParityAndOpposesMotion) {
  for (const char* name : {"SiC", "Metamaterial"}) {
    auto c = config(name, 0.05);
    const double f = friction_stress(c);
    c.velocity = -c.velocity;
    const double b = friction_stress(c);
    EXPECT_LT(f, 0.0) << name;
    EXPECT_NEAR((f + b) / f, 0.0, 1e-6) << name;
  }
}

TEST(Friction, RandomConfigsAreDissipative) {
  const auto p = oracle::friction_properties(12, 7);
  EXPECT_EQ(p.sign_violations, 0);
  EXPECT_LT(p.worst_parity, 1e-6);
  EXPECT_EQ(p.worst_zero, 0.0);
}

TEST(Friction, LinearAtLowSpeed) {
  const double a = friction_stress(config("Metamaterial", 1e-5));
  const double b = friction_stress(config("Metamaterial", 2e-5));
  EXPECT_NEAR(b / a, 2.0, 1e-3);
}

TEST(Friction, WeakensWithGap) {
  auto near = config("BST", 0.01, 100e-9);
  auto far = near;
  far.separation = 200e-9;
  EXPECT_GT(std::abs(friction_stress(near)), std::abs(friction_stress(far)));
}

TEST(Friction, RetardedCloseToNearFieldAtSmallGap) {
  auto c = config("SiC", 0.01, 100e-9);
  const double nf = friction_stress(c);
  c.retarded = true;
  const double rt = friction_stress(c);
  std::cout << "SiC d = 100 nm, v = 0.01 V0: near field " << nf << ", retarded " << rt << " N/m^2\n";
  EXPECT_LT(rt, 0.0);
  EXPECT_NEAR(rt / nf, 1.0, 0.5);
}

TEST(Friction, CurveRecordsCoefficientAndPeaks) {
  const auto base = config("Metamaterial", 0.0);
  const double V0 = materials::critical_velocity(base.a, base.separation);
  const std::vector<double> v{1e-5 * V0, 2e-5 * V0, 4e-5 * V0, 0.5 * V0, V0, 2 * V0};
  const auto curve = friction_curve(base, v);
  ASSERT_TRUE(curve.linear_coefficient.has_value());
  for (bool ok : curve.valid) EXPECT_TRUE(ok);
  EXPECT_NEAR(*curve.linear_coefficient / (-curve.stress[0] / v[0]), 1.0, 1e-3);
  EXPECT_GE(curve.resonance_velocity, V0);
}

TEST(Friction, DefaultGridSpansSixDecades) {
  const auto v = default_velocity_grid(5e-3);
  ASSERT_EQ(v.size(), 40u);
  EXPECT_NEAR(v.front(), 5e-3 * std::pow(10.0, -4.5), 1e-15);
  EXPECT_NEAR(v.back() / (5e-3 * std::pow(10.0, 1.5)), 1.0, 1e-12);
  EXPECT_EQ(default_velocity_grid(1.3e7).back(), SlidingConfig::kMaxSpeed);
}

TEST(Friction, Preconditions) {
  auto c = config("SiC", 0.1);
  c.separation = 0.0;
  EXPECT_THROW(friction_stress(c), DomainError);
  c = config("SiC", 0.0);
  c.velocity = 2e8;
  EXPECT_THROW(friction_stress(c), DomainError);
  c.velocity = 1.0;
  c.T1 = -1.0;
  EXPECT_THROW(friction_stress(c), DomainError);
}
