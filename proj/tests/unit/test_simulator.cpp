#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/pipeline.hpp"
#include "casimir/simulator.hpp"

using namespace casimir;
using namespace casimir::experiment;
using constants::hz;
using constants::two_pi;

namespace {
dynamics::CoupledSystem system_at(double J = 4.88564e-4) {
  const OperatingPoint op;
  return dynamics::shifted_frequencies(op.cantilever1(), op.cantilever2(), -J);
}
const PidConfig kPid{-8e-6, -0.00725};
}  // namespace

TEST(Pid, AddsDampingAndStiffnessToTarget) {
  const auto s = system_at();
  const auto cl = apply_pid(s, kPid);
  EXPECT_NEAR(cl.c2.gamma0, hz(6.7) + hz(34.9), 1e-9);
  EXPECT_NEAR(cl.omega2p / hz(4521.0), 1.0, 1e-4);
  EXPECT_EQ(cl.c1.gamma0, s.c1.gamma0);
  EXPECT_EQ(cl.omega1p, s.omega1p);
  PidConfig on1 = kPid;
  on1.target = 1;
  EXPECT_NEAR(apply_pid(s, on1).c1.gamma0, hz(3.7) + hz(34.9), 1e-9);
  EXPECT_THROW((PidConfig{0.0, 0.0, 3}.validate()), DomainError);
}

TEST(Simulator, SingleOscillatorRingDown) {
  const auto s = system_at(0.0);
  SimulationRun run;
  run.dt = two_pi / s.omega1p / 80.0;
  run.duration = 0.2;
  run.initial = State{1e-9, 0.0, 0.0, 0.0};
  const auto ts = simulate(s, {0.0, s.omega1p}, {}, run);
  // Energy envelope decays as exp(-gamma t); compare whole-period samples.
  const auto per = static_cast<std::size_t>(80);
  const auto cl = apply_pid(s, {});
  const std::size_t n = (ts.size() - 1) / per * per;
  const double e0 = mechanical_energy(cl, run.initial);
  const double e1 = mechanical_energy(cl, State{ts.x1[n], ts.v1[n], ts.x2[n], ts.v2[n]});
  EXPECT_NEAR(std::log(e0 / e1) / ts.t[n] / s.c1.gamma0, 1.0, 2e-3);
}

TEST(Simulator, ResonantAmplitudeMatchesSteadyState) {
  const auto s = system_at();
  const SweepSettings settings;
  const auto cl = apply_pid(s, kPid);
  const double w = cl.omega2p;
  const auto p = steady_response(s, kPid, 1e-12, w, settings);
  const auto ss = dynamics::steady_state(cl, {1e-12, w});
  EXPECT_NEAR(std::abs(p.X - ss.X1) / std::abs(ss.X1), 0.0, 5e-3);
}

TEST(Simulator, RandomConfigsMatchSteadyState) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SweepSettings settings;
  for (int i = 0; i < 20; ++i) {
    const auto c1 = dynamics::CantileverParams::make(1e-10 * (1.0 + u(rng)), hz(4500.0 + 100.0 * u(rng)),
                                                     hz(3.0 + 20.0 * u(rng)));
    const auto c2 = dynamics::CantileverParams::make(1e-10 * (1.0 + u(rng)), hz(4500.0 + 100.0 * u(rng)),
                                                     hz(5.0 + 40.0 * u(rng)));
    const auto s = dynamics::shifted_frequencies(c1, c2, -1e-3 * u(rng));
    const double w = s.omega1p + hz(40.0 * (u(rng) - 0.5));
    const int observed = 1 + static_cast<int>(u(rng) < 0.5);
    const auto p = steady_response(s, {}, 1e-12, w, settings, 1, observed);
    const auto ss = dynamics::steady_state(s, {1e-12, w});
    const auto ref = observed == 1 ? ss.X1 : ss.X2;
    EXPECT_LT(std::abs(p.X - ref) / std::abs(ref), 5e-3) << "config " << i;
  }
}

TEST(Simulator, EnergyNonIncreasingWithoutDrive) {
  EXPECT_LE(oracle::worst_energy_increase(system_at(), kPid), 0.0);
  EXPECT_LE(oracle::worst_energy_increase(system_at(1.2e-3), {}), 0.0);
}

TEST(Simulator, FourthOrderConvergence) {
  const auto s = system_at();
  const double w = apply_pid(s, kPid).omega2p;
  const double coarse = oracle::steady_state_error(s, kPid, w, 60);
  const double fine = oracle::steady_state_error(s, kPid, w, 120);
  EXPECT_GT(coarse / fine, 8.0) << coarse << " -> " << fine;
  EXPECT_LT(coarse, 1e-4);
}

TEST(Simulator, DeterministicGivenSeed) {
  const auto s = system_at();
  SimulationRun run;
  run.dt = 3e-6;
  run.duration = 0.02;
  run.noise_temperature = 300.0;
  run.seed = 42;
  const dynamics::DriveConfig drive{1e-12, hz(4521.0)};
  const auto a = simulate(s, drive, kPid, run);
  const auto b = simulate(s, drive, kPid, run);
  EXPECT_EQ(a.x1, b.x1);
  EXPECT_EQ(a.x2, b.x2);
  run.seed = 43;
  EXPECT_NE(simulate(s, drive, kPid, run).x1, a.x1);
}

TEST(Simulator, ThermalNoiseNearEquipartition) {
  const auto s = system_at(0.0);
  SimulationRun run;
  run.dt = two_pi / s.omega1p / 50.0;
  run.duration = 40.0;
  run.noise_temperature = 300.0;
  run.seed = 5;
  run.record_from = 2.0;
  run.record_every = 7;
  const auto ts = simulate(s, {0.0, s.omega1p}, {}, run);
  double x2 = 0.0;
  for (double x : ts.x1) x2 += x * x;
  x2 /= static_cast<double>(ts.size());
  const double expected = constants::k_B * 300.0 / s.c1.k;
  EXPECT_NEAR(x2 / expected, 1.0, 0.15);
}

TEST(Simulator, RejectsCoarseStepAndBadRuns) {
  const auto s = system_at();
  const dynamics::DriveConfig drive{1e-12, hz(4521.0)};
  SimulationRun run;
  run.dt = 1.5 * max_step(s, drive, kPid);
  run.duration = 0.01;
  EXPECT_THROW(simulate(s, drive, kPid, run), StepTooLarge);
  run.dt = max_step(s, drive, kPid);
  EXPECT_NO_THROW(simulate(s, drive, kPid, run));
  run.driven = 3;
  EXPECT_THROW(simulate(s, drive, kPid, run), DomainError);
}

TEST(Simulator, RecordingWindowAndStride) {
  const auto s = system_at();
  SimulationRun run;
  run.dt = 4e-6;
  run.duration = 0.01;
  run.record_from = 0.005;
  run.record_every = 5;
  const auto ts = simulate(s, {1e-12, hz(4521.0)}, kPid, run);
  EXPECT_NEAR(ts.t.front(), 0.005, 1e-12);
  EXPECT_NEAR(ts.dt, 2e-5, 1e-18);
  EXPECT_NEAR(ts.t.back(), 0.01, 1e-12);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_DOUBLE_EQ(ts.F_couple[i], s.J * ts.x2[i]);
}
