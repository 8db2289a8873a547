#include "casimir/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir::experiment {

using dynamics::CoupledSystem;
using dynamics::DriveConfig;

void PidConfig::validate() const {
  if (!std::isfinite(D) || !std::isfinite(P) || !std::isfinite(c_D)) throw DomainError("PID gains must be finite");
  if (target != 1 && target != 2) throw DomainError("PID target must be cantilever 1 or 2");
}

CoupledSystem apply_pid(const CoupledSystem& sys, const PidConfig& pid) {
  pid.validate();
  CoupledSystem out = sys;
  auto& c = pid.target == 1 ? out.c1 : out.c2;
  double& wp = pid.target == 1 ? out.omega1p : out.omega2p;
  c.gamma0 += pid.added_damping();
  if (!(c.gamma0 > 0.0)) throw DomainError("PID derivative gain drives the damping to <= 0");
  const double w2 = wp * wp + pid.P * c.omega0 * c.omega0;
  if (!(w2 > 0.0)) throw SnapIn("PID proportional gain removes the restoring force");
  wp = std::sqrt(w2);
  return out;
}

double max_step(const CoupledSystem& sys, const DriveConfig& drive, const PidConfig& pid) {
  const CoupledSystem cl = apply_pid(sys, pid);
  const double wmax = std::max({cl.omega1p, cl.omega2p, drive.omega_d});
  return constants::two_pi / wmax / 50.0;
}

double mechanical_energy(const CoupledSystem& sys, const State& s) {
  const double m1 = sys.c1.m, m2 = sys.c2.m;
  return 0.5 * m1 * s.v1 * s.v1 + 0.5 * m2 * s.v2 * s.v2 + 0.5 * m1 * sys.omega1p * sys.omega1p * s.x1 * s.x1 +
         0.5 * m2 * sys.omega2p * sys.omega2p * s.x2 * s.x2 - sys.J * s.x1 * s.x2;
}

TimeSeries simulate(const CoupledSystem& sys, const DriveConfig& drive, const PidConfig& pid,
                    const SimulationRun& run) {
  drive.validate();
  if (run.driven != 1 && run.driven != 2) throw DomainError("driven cantilever must be 1 or 2");
  if (!(run.dt > 0.0) || !(run.duration > 0.0)) throw DomainError("dt and duration must be > 0");
  if (run.record_every == 0) throw DomainError("record_every must be >= 1");
  const double limit = max_step(sys, drive, pid);
  if (run.dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << run.dt << " s exceeds the 50-samples-per-period limit " << limit << " s";
    throw StepTooLarge(os.str());
  }

  const CoupledSystem cl = apply_pid(sys, pid);
  const double m1 = cl.c1.m, m2 = cl.c2.m;
  const double g1 = cl.c1.gamma0, g2 = cl.c2.gamma0;
  const double k1 = cl.omega1p * cl.omega1p, k2 = cl.omega2p * cl.omega2p;
  const double a12 = cl.J / m1, a21 = cl.J / m2;
  const double dt = run.dt;
  const double f1 = run.driven == 1 ? drive.F0 / m1 : 0.0;
  const double f2 = run.driven == 2 ? drive.F0 / m2 : 0.0;
  const double wd = drive.omega_d;

  // Zero-order-hold white force: variance S / (2 dt) with S = 4 kT gamma m.
  std::mt19937_64 rng(run.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sigma1 = 0.0, sigma2 = 0.0;
  if (run.noise_temperature > 0.0) {
    const double kT = constants::k_B * run.noise_temperature;
    sigma1 = std::sqrt(4.0 * kT * g1 * m1 / (2.0 * dt)) / m1;
    sigma2 = std::sqrt(4.0 * kT * g2 * m2 / (2.0 * dt)) / m2;
  }

  const auto steps = static_cast<std::size_t>(std::llround(run.duration / dt));
  TimeSeries ts;
  ts.omega_d = wd;
  ts.dt = dt * static_cast<double>(run.record_every);
  const auto first = static_cast<std::size_t>(std::ceil(run.record_from / dt - 1e-9));
  const std::size_t stored = steps >= first ? (steps - first) / run.record_every + 1 : 0;
  for (auto* v : {&ts.t, &ts.x1, &ts.v1, &ts.x2, &ts.v2, &ts.F_couple}) v->reserve(stored);

  State s = run.initial;
  auto record = [&](std::size_t n) {
    if (n < first || (n - first) % run.record_every != 0) return;
    ts.t.push_back(static_cast<double>(n) * dt);
    ts.x1.push_back(s.x1);
    ts.v1.push_back(s.v1);
    ts.x2.push_back(s.x2);
    ts.v2.push_back(s.v2);
    ts.F_couple.push_back(cl.J * s.x2);
  };

  struct Deriv {
    double x1, v1, x2, v2;
  };
  double n1 = 0.0, n2 = 0.0;
  auto rhs = [&](const State& y, double t) {
    const double c = std::cos(wd * t);
    return Deriv{y.v1, -k1 * y.x1 - g1 * y.v1 + a12 * y.x2 + f1 * c + n1,
                 y.v2, -k2 * y.x2 - g2 * y.v2 + a21 * y.x1 + f2 * c + n2};
  };
  auto axpy = [](const State& y, const Deriv& k, double h) {
    return State{y.x1 + h * k.x1, y.v1 + h * k.v1, y.x2 + h * k.x2, y.v2 + h * k.v2};
  };

  record(0);
  for (std::size_t n = 0; n < steps; ++n) {
    if (sigma1 > 0.0) {
      n1 = sigma1 * normal(rng);
      n2 = sigma2 * normal(rng);
    }
    const double t = static_cast<double>(n) * dt;
    const Deriv d1 = rhs(s, t);
    const Deriv d2 = rhs(axpy(s, d1, 0.5 * dt), t + 0.5 * dt);
    const Deriv d3 = rhs(axpy(s, d2, 0.5 * dt), t + 0.5 * dt);
    const Deriv d4 = rhs(axpy(s, d3, dt), t + dt);
    const double h6 = dt / 6.0;
    s.x1 += h6 * (d1.x1 + 2.0 * d2.x1 + 2.0 * d3.x1 + d4.x1);
    s.v1 += h6 * (d1.v1 + 2.0 * d2.v1 + 2.0 * d3.v1 + d4.v1);
    s.x2 += h6 * (d1.x2 + 2.0 * d2.x2 + 2.0 * d3.x2 + d4.x2);
    s.v2 += h6 * (d1.v2 + 2.0 * d2.v2 + 2.0 * d3.v2 + d4.v2);
    record(n + 1);
  }
  return ts;
}

}  // namespace casimir::experiment
