#include "casimir/figures.hpp"

#include <cmath>

#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/parallel.hpp"

namespace casimir::figures {

using constants::hz;

Fig1e fig1e(const materials::MaterialCatalog& catalog, const std::vector<std::string>& names, double separation,
            double temperature, std::size_t points, unsigned threads, const friction::FrictionOptions& opt) {
  Fig1e fig;
  fig.separation = separation;
  fig.temperature = temperature;
  for (const auto& name : names) {
    const auto& m = catalog.at(name);
    Fig1eMaterial row;
    row.name = name;
    row.omega_s = materials::surface_resonance(m);
    row.V0 = materials::critical_velocity(m, separation);
    const auto grid = friction::default_velocity_grid(row.V0, points);
    friction::SlidingConfig cfg{m, m, separation, 0.0, temperature, temperature, false};
    row.curve = friction::friction_curve(cfg, grid, opt, threads);
    fig.materials.push_back(std::move(row));
  }
  if (fig.materials.size() >= 2) {
    const auto& lo = fig.materials.front().curve.linear_coefficient;
    const auto& hi = fig.materials.back().curve.linear_coefficient;
    if (lo && hi && *lo > 0.0) fig.coefficient_ratio = *hi / *lo;
  }
  return fig;
}

std::vector<GradientRow> casimir_curve(const materials::MaterialCatalog& catalog, const std::string& material,
                                       double radius, double from, double to, std::size_t points, double temperature,
                                       unsigned threads) {
  if (points < 1 || !(from > 0.0) || !(to >= from)) throw DomainError("separation grid must be positive and ascending");
  const auto& m = catalog.at(material);
  const lifshitz::SphereGeometry sphere{radius};
  std::vector<GradientRow> rows(points);
  parallel_for(
      points,
      [&](std::size_t i) {
        const double x = points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);
        lifshitz::PlatePairConfig cfg{m, m, x, temperature};
        GradientRow& r = rows[i];
        r.separation = x;
        r.energy = lifshitz::casimir_energy(cfg);
        r.force = -2.0 * constants::pi * radius * r.energy;
        r.gradient = lifshitz::force_gradient(cfg, sphere);
        r.gradient_over_R = r.gradient / radius;
      },
      threads);
  return rows;
}

Fig3 fig3(const experiment::OperatingPoint& op, const experiment::SweepSettings& s,
          const std::vector<double>& detunings_hz, bool lifshitz_coupling, const materials::MaterialCatalog& catalog) {
  Fig3 fig;
  fig.op = op;
  fig.J_lifshitz = experiment::gold_coupling(op.separation, op.radius, op.temperature, catalog);
  fig.J_calibrated = dynamics::coupling_for_gamma_cf(op.gamma_cf, op.gamma2, op.omega2p, op.m1, op.m2);
  fig.J = lifshitz_coupling ? fig.J_lifshitz : fig.J_calibrated;
  fig.system = dynamics::shifted_frequencies(op.cantilever1(), op.cantilever2(), -fig.J);
  fig.pid = experiment::pid_for_target(op, fig.J, op.gamma2, op.omega2p);
  for (double d : detunings_hz) fig.panels.push_back(experiment::friction_loop(fig.system, fig.pid, hz(d), s));

  constexpr double kQuotedSpeed = 3.8e-4;
  constexpr double kQuotedForce = 3.4e-12;
  for (const auto& p : fig.panels) {
    if (p.detuning != 0.0) continue;
    const double F = std::abs(p.fit.slope) * kQuotedSpeed;
    fig.from_slope = dynamics::friction_metrics(F, kQuotedSpeed, op.m1, op.radius, op.separation);
  }
  fig.quoted = dynamics::friction_metrics(kQuotedForce, kQuotedSpeed, op.m1, op.radius, op.separation);
  return fig;
}

Fig4 fig4(const experiment::OperatingPoint& op, const experiment::SweepSettings& s,
          const std::vector<double>& gamma2_hz, const std::vector<double>& separations,
          const std::vector<double>& pid_gains, const materials::MaterialCatalog& catalog) {
  Fig4 fig;
  fig.op = op;
  fig.separation = 99e-9;
  fig.J = experiment::gold_coupling(fig.separation, op.radius, op.temperature, catalog);
  // The stiffness channel is set once, at the operating separation.
  const double J_op = experiment::gold_coupling(op.separation, op.radius, op.temperature, catalog);
  fig.pid = experiment::pid_for_target(op, J_op, op.gamma2, op.omega2p);

  const auto c1 = op.cantilever1();
  const auto c2 = op.cantilever2();
  fig.calibration = experiment::calibrate_pid(c2, pid_gains, s);

  std::vector<double> g2;
  for (double h : gamma2_hz) g2.push_back(hz(h));
  const auto sys = dynamics::shifted_frequencies(c1, c2, -fig.J);
  fig.vs_gamma2 = experiment::damping_vs_gamma2_sweep(sys, fig.pid, g2, s);
  fig.ceiling = experiment::gamma1_ceiling(experiment::apply_pid(sys, fig.pid));
  fig.saturates = experiment::rises_then_saturates(fig.vs_gamma2.x, fig.vs_gamma2.gamma1_fit, fig.ceiling);

  fig.vs_separation = experiment::damping_vs_separation_sweep(c1, c2, fig.pid, separations, op.radius,
                                                                op.temperature, s, 1e-12, catalog);
  return fig;
}

}  // namespace casimir::figures
