#include "casimir/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/error.hpp"
#include "casimir/parallel.hpp"

namespace casimir::experiment {

using dynamics::CantileverParams;
using dynamics::CoupledSystem;
using constants::two_pi;

dynamics::CantileverParams OperatingPoint::cantilever1() const { return CantileverParams::make(m1, omega1, gamma1); }

dynamics::CantileverParams OperatingPoint::cantilever2() const {
  return CantileverParams::make(m2, omega2, gamma2_natural);
}

double derivative_gain_for(double gamma2, double gamma2_natural, double c_D) {
  return -(gamma2 - gamma2_natural) / c_D;
}

PidConfig pid_for_target(const OperatingPoint& op, double J, double gamma2, double omega2p) {
  PidConfig pid;
  pid.D = derivative_gain_for(gamma2, op.gamma2_natural, pid.c_D);
  // w2'^2 = w2^2 (1 + P) - J / m2
  pid.P = (omega2p * omega2p + J / op.m2) / (op.omega2 * op.omega2) - 1.0;
  return pid;
}

double gold_coupling(double separation, double radius, double temperature, const materials::MaterialCatalog& catalog) {
  const auto& gold = catalog.at("Gold");
  lifshitz::PlatePairConfig cfg{gold, gold, separation, temperature};
  return -lifshitz::force_gradient(cfg, lifshitz::SphereGeometry{radius});
}

RunPlan plan_run(const CoupledSystem& sys, const PidConfig& pid, double omega_d, const SweepSettings& s) {
  const CoupledSystem cl = apply_pid(sys, pid);
  const double wmax = std::max({cl.omega1p, cl.omega2p, omega_d});
  const double per_period = std::max(static_cast<double>(s.samples_per_period), std::ceil(50.0 * wmax / omega_d));
  const double period = two_pi / omega_d;
  RunPlan plan;
  plan.dt = period / per_period;

  double gamma_min = std::min(cl.c1.gamma0, cl.c2.gamma0);
  try {
    const auto modes = dynamics::mode_damping(cl);
    gamma_min = std::min({gamma_min, modes.gamma1, modes.gamma2});
  } catch (const Error&) {
  }
  plan.settle = std::ceil(s.settle_decays / gamma_min / period) * period;
  plan.duration = plan.settle + static_cast<double>(s.demod_periods) * period;
  return plan;
}

namespace {

TimeSeries run_plan(const CoupledSystem& sys, const PidConfig& pid, double F0, double omega_d, const RunPlan& plan,
                    const SweepSettings& s, int driven, std::uint64_t seed) {
  SimulationRun run;
  run.dt = plan.dt;
  run.duration = plan.duration;
  run.seed = seed;
  run.noise_temperature = s.noise_temperature;
  run.driven = driven;
  run.record_from = plan.settle;
  return simulate(sys, dynamics::DriveConfig{F0, omega_d}, pid, run);
}

}  // namespace

SweepPoint steady_response(const CoupledSystem& sys, const PidConfig& pid, double F0, double omega_d,
                           const SweepSettings& s, int driven, int observed, std::uint64_t seed_offset) {
  const RunPlan plan = plan_run(sys, pid, omega_d, s);
  const TimeSeries ts = run_plan(sys, pid, F0, omega_d, plan, s, driven, s.seed + seed_offset);
  const auto& x = observed == 1 ? ts.x1 : ts.x2;
  const auto [begin, n] = period_window(ts, plan.settle - 0.5 * plan.dt, s.demod_periods);
  SweepPoint p{omega_d, demodulate(ts.t, x, omega_d, begin, n)};

  if (s.noise_temperature == 0.0 && s.demod_periods >= 20) {
    const std::size_t per = n / s.demod_periods;
    const double a = std::abs(demodulate(ts.t, x, omega_d, begin, 10 * per));
    const double b = std::abs(demodulate(ts.t, x, omega_d, begin + n - 10 * per, 10 * per));
    if (a > 0.0 && std::abs(b - a) > 1e-3 * a) {
      std::ostringstream os;
      os << "amplitude drifts by " << std::abs(b - a) / a * 100.0 << "% after settling at "
         << omega_d / two_pi << " Hz";
      throw ConvergenceFailure(os.str());
    }
  }
  return p;
}

std::vector<SweepPoint> frequency_sweep(const CoupledSystem& sys, const PidConfig& pid, double F0,
                                        std::span<const double> omegas, const SweepSettings& s, int driven,
                                        int observed) {
  std::vector<SweepPoint> out(omegas.size());
  parallel_for(
      omegas.size(), [&](std::size_t i) { out[i] = steady_response(sys, pid, F0, omegas[i], s, driven, observed, i); },
      s.threads);
  return out;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Peak and full width at half maximum (in |X|^2) of a sampled sweep.
std::pair<double, double> peak_and_width(const std::vector<SweepPoint>& pts) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].amplitude() > pts[k].amplitude()) k = i;
  const double half = 0.5 * std::norm(pts[k].X);
  auto edge = [&](int dir) {
    for (std::size_t i = k; dir > 0 ? i + 1 < pts.size() : i > 0;) {
      const std::size_t j = dir > 0 ? i + 1 : i - 1;
      const double yi = std::norm(pts[i].X), yj = std::norm(pts[j].X);
      if (yj <= half) return pts[i].omega + (yi - half) / (yi - yj) * (pts[j].omega - pts[i].omega);
      i = j;
    }
    return pts[dir > 0 ? pts.size() - 1 : 0].omega;
  };
  return {pts[k].omega, edge(1) - edge(-1)};
}

std::vector<double> amplitudes(const std::vector<SweepPoint>& pts) {
  std::vector<double> a;
  for (const auto& p : pts) a.push_back(p.amplitude());
  return a;
}

std::vector<double> omegas_of(const std::vector<SweepPoint>& pts) {
  std::vector<double> w;
  for (const auto& p : pts) w.push_back(p.omega);
  return w;
}

}  // namespace

DampingMeasurement measure_damping(const CoupledSystem& sys, const PidConfig& pid, double F0, double center,
                                   double half_span, const SweepSettings& s, int cantilever,
                                   std::size_t coarse_points, std::size_t fine_points) {
  DampingMeasurement m;
  const auto coarse = linspace(center - half_span, center + half_span, coarse_points);
  m.coarse = frequency_sweep(sys, pid, F0, coarse, s, cantilever, cantilever);
  auto [peak, fwhm] = peak_and_width(m.coarse);
  fwhm = std::max(fwhm, 2.0 * half_span / static_cast<double>(coarse_points - 1));

  // One refinement pass when the coarse width estimate was far off.
  for (int pass = 0; pass < 2; ++pass) {
    const auto fine = linspace(peak - 3.0 * fwhm, peak + 3.0 * fwhm, fine_points);
    m.fine = frequency_sweep(sys, pid, F0, fine, s, cantilever, cantilever);
    m.fit = lorentzian_fit(omegas_of(m.fine), amplitudes(m.fine));
    const double ratio = fwhm / m.fit.gamma;
    if (ratio > 0.7 && ratio < 1.5) break;
    peak = m.fit.center;
    fwhm = m.fit.gamma;
  }
  return m;
}

PidCalibration calibrate_pid(const CantileverParams& c2, std::span<const double> gains, const SweepSettings& s) {
  if (std::find(gains.begin(), gains.end(), 0.0) == gains.end())
    throw DomainError("PID calibration grid must include D = 0");
  const CoupledSystem isolated = dynamics::shifted_frequencies(c2, c2, 0.0);
  PidCalibration cal;
  for (double D : gains) {
    PidConfig pid;
    pid.D = D;
    const CoupledSystem cl = apply_pid(isolated, pid);
    const double half_span = 8.0 * cl.c2.gamma0;
    const auto m = measure_damping(isolated, pid, 1e-12, cl.omega2p, half_span, s, 2);
    cal.points.push_back({D, m.fit.gamma, m.fit.center});
  }
  std::vector<double> x, y;
  for (const auto& p : cal.points) {
    x.push_back(std::abs(p.D));
    y.push_back(p.gamma2);
  }
  if (x.size() >= 2) {
    const LineFit f = fit_line(x, y);
    cal.gamma2_0 = f.intercept;
    cal.c_D = f.slope;
  } else {
    cal.gamma2_0 = y.front();
  }
  return cal;
}

namespace {

void measure_point(DampingCurve& out, const CoupledSystem& sys, const PidConfig& pid, const SweepSettings& s,
                   double F0, double x) {
  const CoupledSystem cl = apply_pid(sys, pid);
  const auto modes = dynamics::mode_damping(cl);
  const auto m = measure_damping(sys, pid, F0, modes.omega1, hz(25.0), s, 1);
  out.x.push_back(x);
  out.J.push_back(cl.J);
  out.gamma1_fit.push_back(m.fit.gamma);
  out.gamma1_analytic.push_back(modes.gamma1);
  out.omega1_fit.push_back(m.fit.center);
  out.ambiguous.push_back(modes.ambiguous);
}

}  // namespace

DampingCurve damping_vs_gamma2_sweep(const CoupledSystem& sys, const PidConfig& base,
                                     std::span<const double> gamma2_grid, const SweepSettings& s, double F0) {
  for (std::size_t i = 0; i < gamma2_grid.size(); ++i)
    if (!(gamma2_grid[i] > 0.0) || (i > 0 && !(gamma2_grid[i] > gamma2_grid[i - 1])))
      throw DomainError("gamma2 grid must be positive and ascending");
  DampingCurve out;
  for (double g2 : gamma2_grid) {
    PidConfig pid = base;
    pid.target = 2;
    pid.D = derivative_gain_for(g2, sys.c2.gamma0, pid.c_D);
    measure_point(out, sys, pid, s, F0, g2);
  }
  return out;
}

DampingCurve damping_vs_separation_sweep(const CantileverParams& c1, const CantileverParams& c2, const PidConfig& pid,
                                         std::span<const double> separations, double radius, double temperature,
                                         const SweepSettings& s, double F0, const materials::MaterialCatalog& catalog) {
  DampingCurve out;
  for (double d : separations) {
    if (!lifshitz::pfa_valid(d, lifshitz::SphereGeometry{radius}))
      throw DomainError("separation outside the proximity-force range d / R <= 0.05");
    const double J = gold_coupling(d, radius, temperature, catalog);
    const CoupledSystem sys = dynamics::shifted_frequencies(c1, c2, -J);
    measure_point(out, sys, pid, s, F0, d);
  }
  return out;
}

bool rises_then_saturates(std::span<const double> x, std::span<const double> y, double ceiling) {
  if (x.size() != y.size() || y.size() < 3) return false;
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] < y[i - 1]) return false;
    const double slope = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    if (slope > prev_slope * 1.02) return false;
    prev_slope = slope;
  }
  return y.back() >= 0.9 * ceiling;
}

double gamma1_ceiling(const CoupledSystem& sys) {
  const double gap = std::abs(sys.omega1p - sys.omega2p);
  const double lo = hz(0.1);
  const double hi = std::max(100.0 * gap, 10.0 * sys.c2.gamma0);
  double best = 0.0;
  constexpr int kPoints = 400;
  for (int i = 0; i <= kPoints; ++i) {
    const double g2 = lo * std::pow(hi / lo, static_cast<double>(i) / kPoints);
    try {
      const auto m = dynamics::mode_damping(sys.with_gamma2(g2));
      if (!m.ambiguous) best = std::max(best, m.gamma1);
    } catch (const Error&) {
      break;
    }
  }
  return best;
}

LoopPanel friction_loop(const CoupledSystem& sys, const PidConfig& pid, double detuning, const SweepSettings& s,
                        double v_peak, std::size_t levels, std::size_t loop_periods) {
  if (levels == 0) throw DomainError("need at least one drive level");
  const CoupledSystem cl = apply_pid(sys, pid);
  LoopPanel panel;
  panel.detuning = detuning;
  panel.omega_d = cl.omega2p + detuning;
  const double wd = panel.omega_d;
  const auto unit = dynamics::steady_state(cl, dynamics::DriveConfig{1.0, wd});
  const double F0_max = v_peak / (wd * std::abs(unit.X1));
  const RunPlan plan = plan_run(sys, pid, wd, s);

  std::vector<TimeSeries> runs(levels);
  parallel_for(
      levels,
      [&](std::size_t k) {
        const double F0 = F0_max * static_cast<double>(k + 1) / static_cast<double>(levels);
        runs[k] = run_plan(sys, pid, F0, wd, plan, s, 1, s.seed + k);
      },
      s.threads);
  for (const auto& ts : runs) {
    const auto c = extract_friction_zero_crossings(ts, cl.J, plan.settle);
    panel.samples.insert(panel.samples.end(), c.begin(), c.end());
  }
  panel.fit = fit_crossings(panel.samples);
  panel.slope_analytic = -cl.c1.m * dynamics::gamma_cf(cl, wd);
  panel.phase = lissajous_phase(runs.back(), plan.settle - 0.5 * plan.dt);
  panel.phase_analytic = dynamics::coupling_phase(cl, wd);

  const TimeSeries& last = runs.back();
  const auto keep = static_cast<std::size_t>(std::llround(static_cast<double>(loop_periods) * two_pi / wd / last.dt));
  const std::size_t from = last.size() > keep ? last.size() - keep - 1 : 0;
  panel.loop.omega_d = wd;
  panel.loop.dt = last.dt;
  auto tail = [&](const std::vector<double>& v) { return std::vector<double>(v.begin() + from, v.end()); };
  panel.loop.t = tail(last.t);
  panel.loop.x1 = tail(last.x1);
  panel.loop.v1 = tail(last.v1);
  panel.loop.x2 = tail(last.x2);
  panel.loop.v2 = tail(last.v2);
  panel.loop.F_couple = tail(last.F_couple);
  return panel;
}

}  // namespace casimir::experiment
