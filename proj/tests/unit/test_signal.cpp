#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/lorentzian.hpp"
#include "casimir/signal.hpp"

using namespace casimir;
using namespace casimir::experiment;
using constants::hz;
using constants::two_pi;

namespace {
// x1 = A cos(w t), v1 = -A w sin(w t), F = J x2 with x2 = B cos(w t + phi).
TimeSeries tone(double w, double A, double B, double phi, double J, int periods = 150, int per_period = 64) {
  TimeSeries ts;
  ts.omega_d = w;
  ts.dt = two_pi / w / per_period;
  for (int i = 0; i <= periods * per_period; ++i) {
    const double t = i * ts.dt;
    ts.t.push_back(t);
    ts.x1.push_back(A * std::cos(w * t));
    ts.v1.push_back(-A * w * std::sin(w * t));
    ts.x2.push_back(B * std::cos(w * t + phi));
    ts.v2.push_back(-B * w * std::sin(w * t + phi));
    ts.F_couple.push_back(J * ts.x2.back());
  }
  return ts;
}
}  // namespace

TEST(Signal, DemodulationRecoversPhasor) {
  const double w = hz(4521.0);
  const auto ts = tone(w, 2e-9, 1e-9, 0.3, 1e-4);
  const auto [begin, n] = period_window(ts, 0.0);
  const auto X = demodulate(ts.t, ts.x2, w, begin, n);
  EXPECT_NEAR(std::abs(X), 1e-9, 1e-15);
  EXPECT_NEAR(std::arg(X), 0.3, 1e-9);
}

TEST(Signal, WindowNeedsEnoughPeriods) {
  const auto ts = tone(hz(4521.0), 1e-9, 1e-9, 0.0, 1e-4, 50);
  EXPECT_THROW(period_window(ts, 0.0), DomainError);
  EXPECT_NO_THROW(period_window(ts, 0.0, 40));
}

TEST(Signal, LissajousPhaseSign) {
  const double w = hz(4521.0);
  // -v1 = A w sin(w t) = A w cos(w t - pi/2); x2 ahead of that by 0.45 rad.
  const auto ts = tone(w, 1e-9, 1e-9, -constants::pi / 2.0 + 0.45, 1e-4);
  EXPECT_NEAR(lissajous_phase(ts, 0.0), 0.45, 1e-9);
}

TEST(Signal, LissajousRejectsTwoTones) {
  auto ts = tone(hz(4521.0), 1e-9, 1e-9, 0.0, 1e-4);
  for (std::size_t i = 0; i < ts.size(); ++i) ts.F_couple[i] += 0.5e-13 * std::cos(hz(4400.0) * ts.t[i]);
  EXPECT_THROW(lissajous_phase(ts, 0.0), ToneAmbiguity);
}

TEST(Signal, ZeroCrossingsSampleFrictionComponent) {
  const double w = hz(4521.0), A = 1e-8, B = 3e-9, J = 5e-4, phi = -1.0;
  const auto ts = tone(w, A, B, phi, J);
  const auto samples = extract_friction_zero_crossings(ts, J, 0.0);
  EXPECT_GE(samples.size(), 290u);
  const auto fit = fit_crossings(samples);
  // At x1 = 0, F = J B cos(pi/2 + phi) per v1 = -A w sin(pi/2).
  EXPECT_NEAR(fit.slope, J * B * std::sin(phi) / (A * w), 1e-6 * std::abs(fit.slope));
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-6 * J * B);
}

TEST(Signal, NoCrossingsBelowNoiseFloor) {
  auto ts = tone(hz(4521.0), 1e-12, 1e-12, 0.0, 1e-4);
  EXPECT_THROW(extract_friction_zero_crossings(ts, 1e-4, 0.0, 1e-10), NoCrossings);
  for (auto& x : ts.x1) x = 1.0;
  EXPECT_THROW(extract_friction_zero_crossings(ts, 1e-4, 0.0), NoCrossings);
}

TEST(Signal, LineFitExact) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_EQ(f.n, 4u);
}

TEST(Lorentzian, NoiselessRoundTrip) {
  for (double g_hz : {6.7, 41.6, 91.0}) {
    const double c = hz(4557.0), g = hz(g_hz);
    const auto s = oracle::lorentzian_samples(c, g, 61);
    const auto fit = lorentzian_fit(s.omega, s.amplitude);
    EXPECT_NEAR(fit.gamma / g, 1.0, 1e-3) << g_hz;
    EXPECT_NEAR(fit.center / c, 1.0, 1e-6) << g_hz;
  }
}

TEST(Lorentzian, OnePercentNoiseOverSeeds) {
  const double c = hz(4557.0), g = hz(41.6);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = oracle::lorentzian_samples(c, g, 61, 0.01, seed);
    const auto fit = lorentzian_fit(s.omega, s.amplitude, FitWeighting::Relative);
    worst = std::max(worst, std::abs(fit.gamma / g - 1.0));
  }
  EXPECT_LT(worst, 0.02);
}

TEST(Lorentzian, Preconditions) {
  const auto s = oracle::lorentzian_samples(hz(4557.0), hz(41.6), 4);
  EXPECT_THROW(lorentzian_fit(s.omega, s.amplitude), FitFailure);
  const auto flat = oracle::lorentzian_samples(hz(4557.0), hz(4000.0), 30);
  EXPECT_THROW(lorentzian_fit(std::span(flat.omega).subspan(0, 10), std::span(flat.amplitude).subspan(0, 10)),
               FitFailure);
}
