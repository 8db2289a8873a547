// casimir: command-line front end. Every quantity is SI (m, s, kg, N, K,
// rad/s) unless a flag name ends in _hz or says "Hz".

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "casimir/catalog_io.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/figures.hpp"
#include "casimir/friction.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/pipeline.hpp"
#include "config.hpp"
#include "output.hpp"

namespace {

using namespace casimir;
using cli::CsvWriter;
using cli::PlotSpec;
using constants::hz;
using constants::two_pi;

struct Globals {
  std::string materials_file;
  std::optional<std::uint64_t> seed;  // unset: 1, or the system file's run.seed
  bool gnuplot = false;
  unsigned threads = 0;
  double noise_temperature = 0.0;
};

materials::MaterialCatalog catalog_of(const Globals& g) {
  return g.materials_file.empty() ? materials::MaterialCatalog::builtin() : materials::load_catalog(g.materials_file);
}

experiment::SweepSettings settings_of(const Globals& g) {
  experiment::SweepSettings s;
  s.seed = g.seed.value_or(1);
  s.threads = g.threads;
  s.noise_temperature = g.noise_temperature;
  return s;
}

void plot(const Globals& g, const CsvWriter& csv, PlotSpec spec) {
  if (g.gnuplot) cli::write_gnuplot(csv, spec);
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

double to_hz(double w) { return w / two_pi; }

// ---------------------------------------------------------------- materials

int cmd_materials(const Globals& g, bool json, double d) {
  const auto cat = catalog_of(g);
  if (json) {
    std::cout << materials::dump_catalog(cat) << '\n';
    return 0;
  }
  std::cout << "name,form,eps_inf,omega_T_rad_per_s,gamma_rad_per_s,omega_s_rad_per_s,V0_m_per_s\n";
  for (const auto& [name, m] : cat.entries()) {
    std::cout << name << ',' << materials::to_string(m.form) << ',' << m.eps_inf << ',' << m.omega_T << ','
              << m.gamma << ',';
    try {
      std::cout << fmt(materials::surface_resonance(m)) << ',' << fmt(materials::critical_velocity(m, d)) << '\n';
    } catch (const NoSurfaceMode&) {
      std::cout << "none,none\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- casimir

void write_gradient_csv(const Globals& g, const std::filesystem::path& path, const std::string& title,
                        const std::vector<figures::GradientRow>& rows, const std::string& material, double radius,
                        double temp) {
  CsvWriter csv(path,
                {title, "material " + material + ", sphere radius " + fmt(radius) + " m, T = " + fmt(temp) +
                            " K, proximity-force approximation",
                 "F > 0 pulls the sphere toward the plate; dFdx < 0 softens the cantilever"},
                {"separation_m", "E_J_per_m2", "F_N", "dFdx_N_per_m", "dFdx_over_R_N_per_m2"});
  for (const auto& r : rows) csv.row({r.separation, r.energy, r.force, r.gradient, r.gradient_over_R});
  plot(g, csv, {title, 1, {5}, false, true, true});
}

int cmd_casimir(const Globals& g, const std::string& material, double radius, double from, double to,
                std::size_t points, double temp, const std::string& out) {
  const auto rows = figures::casimir_curve(catalog_of(g), material, radius, from, to, points, temp, g.threads);
  write_gradient_csv(g, out, "Casimir sphere-plate interaction", rows, material, radius, temp);
  if (!lifshitz::pfa_valid(to, lifshitz::SphereGeometry{radius}))
    std::cerr << "warning: d / R exceeds 0.05 at the far end; PFA is unreliable there\n";
  return 0;
}

int cmd_fig2b(const Globals& g, const std::string& dir, double radius, double from, double to, std::size_t points,
              double temp) {
  const auto path = cli::prepare_dir(dir) / "fig2b.csv";
  const auto rows = figures::casimir_curve(catalog_of(g), "Gold", radius, from, to, points, temp, g.threads);
  write_gradient_csv(g, path, "Fig. 2(b): Casimir force gradient over R, gold sphere vs gold plate", rows, "Gold",
                     radius, temp);
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    monotone = monotone && std::abs(rows[i].gradient_over_R) < std::abs(rows[i - 1].gradient_over_R);
  std::cout << "wrote " << path.string() << "\n|dF/dx| / R strictly decreasing: " << (monotone ? "yes" : "no") << '\n';
  return 0;
}

// ---------------------------------------------------------------- friction

int write_friction_csv(const Globals& g, const std::filesystem::path& path, const std::string& title,
                       const friction::FrictionCurve& curve, const std::string& label) {
  std::vector<std::string> comments{title, label};
  if (curve.linear_coefficient) comments.push_back("linear coefficient " + fmt(*curve.linear_coefficient) + " kg s^-1 m^-2");
  comments.push_back("argmax |stress|/v at " + fmt(curve.peak_velocity) + " m/s; argmax |stress| at " +
                     fmt(curve.resonance_velocity) + " m/s");
  CsvWriter csv(path, comments, {"velocity_m_per_s", "stress_N_per_m2", "stress_over_v"});
  int failures = 0;
  for (std::size_t i = 0; i < curve.velocities.size(); ++i) {
    const double v = curve.velocities[i];
    csv.row({v, curve.stress[i], curve.stress[i] / v});
    if (!curve.valid[i]) {
      ++failures;
      std::cerr << label << ", v = " << v << " m/s: " << curve.errors[i] << '\n';
    }
  }
  plot(g, csv, {title, 1, {3}, true, true, true});
  return failures;
}

int cmd_friction(const Globals& g, const std::string& ma, std::string mb, double d, double T1, double T2, double vmin,
                 double vmax, std::size_t points, bool retarded, const std::string& out) {
  const auto cat = catalog_of(g);
  if (mb.empty()) mb = ma;
  friction::SlidingConfig cfg{cat.at(ma), cat.at(mb), d, 0.0, T1, T2 < 0.0 ? T1 : T2, retarded};
  std::vector<double> grid;
  if (vmin > 0.0 && vmax > 0.0) {
    if (points < 1 || !(vmax >= vmin)) throw DomainError("need --vmin <= --vmax and --points >= 1");
    for (std::size_t i = 0; i < points; ++i)
      grid.push_back(points == 1 ? vmin : vmin * std::pow(vmax / vmin, static_cast<double>(i) / (points - 1)));
  } else {
    grid = friction::default_velocity_grid(materials::critical_velocity(cfg.a, d), points);
  }
  const auto curve = friction::friction_curve(cfg, grid, {}, g.threads);
  const int failures = write_friction_csv(g, out, "Casimir friction stress between sliding half-spaces", curve,
                                          ma + " / " + mb + ", d = " + fmt(d) + " m" + (retarded ? ", retarded" : ""));
  return failures ? 3 : 0;
}

int cmd_fig1e(const Globals& g, const std::string& dir, std::size_t points, double d, double temp) {
  const auto root = cli::prepare_dir(dir);
  const auto fig = figures::fig1e(catalog_of(g), {"SiC", "BST", "Metamaterial"}, d, temp, points, g.threads);
  int failures = 0;
  for (const auto& m : fig.materials)
    failures += write_friction_csv(g, root / ("fig1e_" + m.name + ".csv"),
                                   "Fig. 1(e): Casimir friction between identical sliding plates", m.curve,
                                   m.name + ", d = " + fmt(d) + " m, T = " + fmt(temp) + " K, near field");
  std::string legend = "material_index:";
  for (std::size_t i = 0; i < fig.materials.size(); ++i) legend += " " + std::to_string(i) + " = " + fig.materials[i].name;
  CsvWriter csv(root / "fig1e_summary.csv",
                {"Fig. 1(e) summary: surface resonance, critical velocity and friction coefficients", legend,
                 "Metamaterial/SiC linear-coefficient ratio " + fmt(fig.coefficient_ratio)},
                {"material_index", "omega_s_rad_per_s", "V0_m_per_s", "linear_coefficient_kg_per_s_m2",
                 "peak_velocity_m_per_s", "resonance_velocity_m_per_s"});
  for (std::size_t i = 0; i < fig.materials.size(); ++i) {
    const auto& m = fig.materials[i];
    csv.row({static_cast<double>(i), m.omega_s, m.V0, m.curve.linear_coefficient.value_or(NAN), m.curve.peak_velocity,
             m.curve.resonance_velocity});
  }
  std::cout << "material,omega_s_rad_per_s,V0_m_per_s,linear_coefficient,peak_velocity,resonance_velocity\n";
  for (const auto& m : fig.materials)
    std::cout << m.name << ',' << fmt(m.omega_s) << ',' << fmt(m.V0) << ','
              << fmt(m.curve.linear_coefficient.value_or(NAN)) << ',' << fmt(m.curve.peak_velocity) << ','
              << fmt(m.curve.resonance_velocity) << '\n';
  std::cout << "ratio Metamaterial/SiC," << fmt(fig.coefficient_ratio) << '\n';
  return failures ? 3 : 0;
}

// ---------------------------------------------------------------- dynamics

int cmd_dynamics_split(const Globals& g, const std::string& config, double drive_hz, double F0,
                       const std::string& out) {
  const auto file = cli::load_system(config, catalog_of(g));
  const auto sys = experiment::apply_pid(file.system, file.pid);
  dynamics::DriveConfig drive = file.drive.value_or(dynamics::DriveConfig{1e-12, sys.omega2p});
  if (drive_hz > 0.0) drive.omega_d = hz(drive_hz);
  if (F0 >= 0.0) drive.F0 = F0;
  const auto ss = dynamics::steady_state(sys, drive);
  const double w = drive.omega_d;
  const double gcf = dynamics::gamma_cf(sys, w);
  CsvWriter csv(out,
                {"coupling force split into conservative and friction parts over one drive period",
                 "J = " + fmt(sys.J) + " N/m, w1'/2pi = " + fmt(to_hz(sys.omega1p), 8) + " Hz, w2'/2pi = " +
                     fmt(to_hz(sys.omega2p), 8) + " Hz, drive " + fmt(to_hz(w), 8) + " Hz",
                 "gamma_CF/2pi = " + fmt(to_hz(gcf)) + " Hz, phase(-v1 -> F_couple) = " +
                     fmt(dynamics::coupling_phase(sys, w) * 180.0 / constants::pi) + " deg"},
                {"t_s", "x1_m", "v1_mps", "x2_m", "F_couple_N", "F_conservative_N", "F_CF_N"});
  constexpr int kSamples = 200;
  for (int i = 0; i < kSamples; ++i) {
    const double t = two_pi / w * i / kSamples;
    const auto e = std::exp(dynamics::complex(0.0, w * t));
    const double x1 = (ss.X1 * e).real();
    const double v1 = (dynamics::complex(0.0, w) * ss.X1 * e).real();
    const double x2 = (ss.X2 * e).real();
    const auto split = dynamics::force_split(sys, drive, x1, v1);
    csv.row({t, x1, v1, x2, split.F_couple, split.F_conservative, split.F_CF});
  }
  plot(g, csv, {"Force decomposition", 3, {5, 7}});
  std::cout << "gamma_CF_hz," << fmt(to_hz(gcf)) << "\nphase_deg,"
            << fmt(dynamics::coupling_phase(sys, w) * 180.0 / constants::pi) << '\n';
  return 0;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment_run(const Globals& g, const std::string& config, const std::string& out) {
  const auto file = cli::load_system(config, catalog_of(g));
  if (!file.drive) throw DomainError("experiment run needs a 'drive' section");
  experiment::SimulationRun run;
  if (file.run) {
    run = *file.run;
  } else {
    experiment::SweepSettings s = settings_of(g);
    const auto plan = experiment::plan_run(file.system, file.pid, file.drive->omega_d, s);
    run.dt = plan.dt;
    run.duration = plan.duration;
    run.record_from = plan.settle;
    run.seed = 1;
  }
  if (g.seed) run.seed = *g.seed;
  if (g.noise_temperature > 0.0) run.noise_temperature = g.noise_temperature;
  const auto ts = experiment::simulate(file.system, *file.drive, file.pid, run);
  CsvWriter csv(out, {"time series of the coupled cantilevers (Fig. 3(a)-(c) channels)", "seed " + std::to_string(run.seed)},
                {"t_s", "x1_m", "v1_mps", "x2_m", "F_couple_N"});
  for (std::size_t i = 0; i < ts.size(); ++i) csv.row({ts.t[i], ts.x1[i], ts.v1[i], ts.x2[i], ts.F_couple[i]});
  plot(g, csv, {"Time series", 1, {2, 4}});
  return 0;
}

int cmd_fig3(const Globals& g, const std::string& dir, bool lifshitz_J) {
  const auto root = cli::prepare_dir(dir);
  experiment::OperatingPoint op;
  const auto fig = figures::fig3(op, settings_of(g), {0.0, -10.0, -21.0}, lifshitz_J, catalog_of(g));
  const std::string jline = "J simulated " + fmt(fig.J) + " N/m; gold Lifshitz gradient " + fmt(fig.J_lifshitz) +
                            " N/m; calibrated from gamma_CF " + fmt(fig.J_calibrated) + " N/m (ratio " +
                            fmt(fig.J_calibrated / fig.J_lifshitz, 4) + ")";
  CsvWriter summary(root / "fig3_summary.csv",
                    {"Fig. 3(e)-(h): zero-crossing friction samples and Lissajous phase", jline,
                     "Gamma_CF from slope " + fmt(fig.from_slope.Gamma_CF) + " kg s^-1 m^-2, sigma_CF at 0.38 mm/s " +
                         fmt(fig.from_slope.sigma_CF) + " N/m^2, A = " + fmt(fig.from_slope.area) + " m^2"},
                    {"detuning_hz", "drive_hz", "slope_kg_per_s", "slope_analytic_kg_per_s", "r_squared",
                     "intercept_N", "phase_deg", "phase_analytic_deg"});
  for (const auto& p : fig.panels) {
    summary.row({to_hz(p.detuning), to_hz(p.omega_d), p.fit.slope, p.slope_analytic, p.fit.r_squared, p.fit.intercept,
                 p.phase * 180.0 / constants::pi, p.phase_analytic * 180.0 / constants::pi});
    const std::string tag = fmt(std::round(to_hz(p.detuning))) + "Hz";
    CsvWriter loop(root / ("fig3_loop_" + tag + ".csv"),
                   {"Fig. 3(f): coupling force against -v1 (Lissajous), detuning " + tag},
                   {"t_s", "x1_m", "v1_mps", "x2_m", "F_couple_N"});
    for (std::size_t i = 0; i < p.loop.size(); ++i)
      loop.row({p.loop.t[i], p.loop.x1[i], p.loop.v1[i], p.loop.x2[i], p.loop.F_couple[i]});
    plot(g, loop, {"Lissajous " + tag, 3, {5}});
    CsvWriter cross(root / ("fig3_crossings_" + tag + ".csv"),
                    {"Fig. 3(g): F_CF = J x2 sampled where x1 = 0, detuning " + tag}, {"t_s", "v1_mps", "F_CF_N"});
    for (const auto& s : p.samples) cross.row({s.t, s.v1, s.F_CF});
    plot(g, cross, {"F_CF vs v1 " + tag, 2, {3}});
  }
  std::cout << jline << '\n';
  for (const auto& p : fig.panels)
    std::cout << "detuning " << fmt(to_hz(p.detuning)) << " Hz: slope " << fmt(p.fit.slope) << " kg/s (analytic "
              << fmt(p.slope_analytic) << "), phase " << fmt(p.phase * 180.0 / constants::pi, 4) << " deg\n";
  return 0;
}

int cmd_fig4(const Globals& g, const std::string& dir) {
  const auto root = cli::prepare_dir(dir);
  experiment::OperatingPoint op;
  const auto fig = figures::fig4(op, settings_of(g), {6.7, 15.0, 25.0, 41.6, 55.0, 70.0, 91.0},
                                 {99e-9, 110e-9, 125e-9, 140e-9, 154e-9, 175e-9, 200e-9, 250e-9, 300e-9},
                                 {0.0, -2e-6, -4e-6, -8e-6, -1.2e-5, -1.6e-5, -1.932e-5}, catalog_of(g));
  CsvWriter pid(root / "fig4_pid_calibration.csv",
                {"PID derivative calibration of cantilever 2 (Lorentzian fits)",
                 "gamma2 = " + fmt(to_hz(fig.calibration.gamma2_0)) + " Hz + " +
                     fmt(to_hz(fig.calibration.c_D)) + " Hz x |D|"},
                {"D", "gamma2_hz", "f2_hz"});
  for (const auto& p : fig.calibration.points) pid.row({p.D, to_hz(p.gamma2), to_hz(p.omega2)});

  CsvWriter a(root / "fig4a.csv",
              {"Fig. 4(a): damping of cantilever 1 against the PID-tuned damping of cantilever 2",
               "d = " + fmt(fig.separation) + " m, J = " + fmt(fig.J) + " N/m (gold Lifshitz gradient)",
               "analytic supremum " + fmt(to_hz(fig.ceiling)) + " Hz; rises then saturates: " +
                   (fig.saturates ? "yes" : "no")},
              {"gamma2_hz", "gamma1_fit_hz", "gamma1_analytic_hz", "f1_fit_hz"});
  for (std::size_t i = 0; i < fig.vs_gamma2.x.size(); ++i)
    a.row({to_hz(fig.vs_gamma2.x[i]), to_hz(fig.vs_gamma2.gamma1_fit[i]), to_hz(fig.vs_gamma2.gamma1_analytic[i]),
           to_hz(fig.vs_gamma2.omega1_fit[i])});
  plot(g, a, {"Fig. 4(a)", 1, {2, 3}});

  CsvWriter b(root / "fig4b.csv",
              {"Fig. 4(b): damping of cantilever 1 against separation, gamma2 = 2pi x " + fmt(to_hz(op.gamma2)) + " Hz"},
              {"separation_m", "J_N_per_m", "gamma1_fit_hz", "gamma1_analytic_hz"});
  for (std::size_t i = 0; i < fig.vs_separation.x.size(); ++i)
    b.row({fig.vs_separation.x[i], fig.vs_separation.J[i], to_hz(fig.vs_separation.gamma1_fit[i]),
           to_hz(fig.vs_separation.gamma1_analytic[i])});
  plot(g, b, {"Fig. 4(b)", 1, {3, 4}});

  double best = 0.0;
  for (double v : fig.vs_gamma2.gamma1_fit) best = std::max(best, v);
  std::cout << "max gamma1 at d = 99 nm: " << fmt(to_hz(best), 4) << " Hz (J = " << fmt(fig.J) << " N/m)\n";
  return 0;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Domain:
      return 2;
    case ErrorKind::Convergence:
      return 3;
    case ErrorKind::Fit:
      return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir interaction, Casimir friction and coupled-cantilever virtual experiments (SI units)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--materials", g.materials_file, "JSON material catalog overlaid on the built-in one")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "seed for thermal-noise generation (integer)");
  app.add_flag("--gnuplot", g.gnuplot, "also write a <csv>.gp plot script next to every CSV");
  app.add_option("--threads", g.threads, "worker threads for sweeps (0 = all cores)");
  app.add_option("--noise-temp", g.noise_temperature, "thermal force noise temperature in K (0 = off)");

  int rc = 0;

  auto* mat = app.add_subcommand("materials", "list the catalog with surface resonance (rad/s) and V0 (m/s)");
  bool as_json = false;
  double mat_d = 100e-9;
  mat->add_flag("--json", as_json, "dump the catalog as JSON (SI, rad/s)");
  mat->add_option("--d", mat_d, "separation for V0 in m")->capture_default_str();
  mat->callback([&] { rc = cmd_materials(g, as_json, mat_d); });

  auto* cas = app.add_subcommand("casimir", "sphere-plate Casimir energy, force and gradient vs separation");
  std::string cas_mat = "Gold", cas_out = "casimir.csv";
  double radius = 35e-6, from = 90e-9, to = 300e-9, temp = 300.0;
  std::size_t points = 50;
  cas->add_option("--material", cas_mat, "catalog name (case-insensitive)")->capture_default_str();
  cas->add_option("--radius", radius, "sphere radius in m")->capture_default_str();
  cas->add_option("--from", from, "smallest separation in m")->capture_default_str();
  cas->add_option("--to", to, "largest separation in m")->capture_default_str();
  cas->add_option("--points", points, "number of separations")->capture_default_str();
  cas->add_option("--temp", temp, "temperature in K (0 = zero-temperature integral)")->capture_default_str();
  cas->add_option("--out", cas_out, "output CSV path")->capture_default_str();
  cas->callback([&] { rc = cmd_casimir(g, cas_mat, radius, from, to, points, temp, cas_out); });

  auto* fr = app.add_subcommand("friction", "Casimir friction stress (N/m^2) against sliding speed (m/s)");
  std::string fr_a = "SiC", fr_b, fr_out = "friction.csv";
  double fr_d = 100e-9, fr_T1 = 300.0, fr_T2 = -1.0, vmin = 0.0, vmax = 0.0;
  std::size_t fr_points = 40;
  bool retarded = false;
  fr->add_option("--material", fr_a, "material of the resting plate")->capture_default_str();
  fr->add_option("--material-b", fr_b, "material of the sliding plate (default: same)");
  fr->add_option("--d", fr_d, "gap in m")->capture_default_str();
  fr->add_option("--temp", fr_T1, "temperature of the resting plate in K")->capture_default_str();
  fr->add_option("--temp2", fr_T2, "temperature of the sliding plate in K (default: --temp)");
  fr->add_option("--vmin", vmin, "lowest speed in m/s (default: V0 x 10^-4.5)");
  fr->add_option("--vmax", vmax, "highest speed in m/s (default: V0 x 10^1.5, capped at 1e8)");
  fr->add_option("--points", fr_points, "log-spaced speeds")->capture_default_str();
  fr->add_flag("--retarded", retarded, "full Fresnel amplitudes with both polarisations");
  fr->add_option("--out", fr_out, "output CSV path")->capture_default_str();
  fr->callback([&] { rc = cmd_friction(g, fr_a, fr_b, fr_d, fr_T1, fr_T2, vmin, vmax, fr_points, retarded, fr_out); });

  auto* dyn = app.add_subcommand("dynamics", "closed-form coupled-cantilever analytics");
  dyn->require_subcommand(1);
  auto* split = dyn->add_subcommand("split", "steady-state decomposition F_couple = F_conservative + F_CF (N)");
  std::string sys_cfg, split_out = "split.csv";
  double drive_hz = 0.0, split_F0 = -1.0;
  split->add_option("--config", sys_cfg, "JSON system file (see configs/system.json)")->required();
  split->add_option("--drive-freq", drive_hz, "drive frequency in Hz (default: w2'/2pi or the file's drive)");
  split->add_option("--F0", split_F0, "drive amplitude in N (default: file or 1e-12)");
  split->add_option("--out", split_out, "output CSV path")->capture_default_str();
  split->callback([&] { rc = cmd_dynamics_split(g, sys_cfg, drive_hz, split_F0, split_out); });

  std::string fig_dir = "out";
  bool lifshitz_J = false;
  auto add_fig3 = [&](CLI::App* parent, const std::string& name) {
    auto* c = parent->add_subcommand(name, "Fig. 3 bundle: friction loops at detunings 0, -10, -21 Hz");
    c->add_option("--out", fig_dir, "output directory")->capture_default_str();
    c->add_flag("--lifshitz-J", lifshitz_J, "use the gold Lifshitz gradient instead of the gamma_CF calibration");
    c->callback([&] { rc = cmd_fig3(g, fig_dir, lifshitz_J); });
  };
  auto add_fig4 = [&](CLI::App* parent, const std::string& name) {
    auto* c = parent->add_subcommand(name, "Fig. 4 bundle: gamma1 (Hz) against gamma2 (Hz) and separation (m)");
    c->add_option("--out", fig_dir, "output directory")->capture_default_str();
    c->callback([&] { rc = cmd_fig4(g, fig_dir); });
  };

  auto* ex = app.add_subcommand("experiment", "time-domain virtual experiment");
  ex->require_subcommand(1);
  auto* run = ex->add_subcommand("run", "simulate a system file; CSV t_s, x1_m, v1_mps, x2_m, F_couple_N");
  std::string run_cfg, run_out = "run.csv";
  run->add_option("--config", run_cfg, "JSON system file with drive (and optional run) sections")->required();
  run->add_option("--out", run_out, "output CSV path")->capture_default_str();
  run->callback([&] { rc = cmd_experiment_run(g, run_cfg, run_out); });
  add_fig3(ex, "fig3");
  add_fig4(ex, "fig4");

  auto* f1 = app.add_subcommand("fig1e", "Fig. 1(e) bundle: friction curves for SiC, BST and Metamaterial");
  std::size_t f1_points = 40;
  double f1_d = 100e-9, f1_T = 300.0;
  f1->add_option("--out", fig_dir, "output directory")->capture_default_str();
  f1->add_option("--points", f1_points, "speeds per material")->capture_default_str();
  f1->add_option("--d", f1_d, "gap in m")->capture_default_str();
  f1->add_option("--temp", f1_T, "temperature in K")->capture_default_str();
  f1->callback([&] { rc = cmd_fig1e(g, fig_dir, f1_points, f1_d, f1_T); });

  auto* f2 = app.add_subcommand("fig2b", "Fig. 2(b) bundle: gold gradient over R (N/m^2) against separation (m)");
  double f2_R = 35e-6, f2_from = 90e-9, f2_to = 300e-9, f2_T = 300.0;
  std::size_t f2_points = 50;
  f2->add_option("--out", fig_dir, "output directory")->capture_default_str();
  f2->add_option("--radius", f2_R, "sphere radius in m")->capture_default_str();
  f2->add_option("--from", f2_from, "smallest separation in m")->capture_default_str();
  f2->add_option("--to", f2_to, "largest separation in m")->capture_default_str();
  f2->add_option("--points", f2_points, "number of separations")->capture_default_str();
  f2->add_option("--temp", f2_T, "temperature in K")->capture_default_str();
  f2->callback([&] { rc = cmd_fig2b(g, fig_dir, f2_R, f2_from, f2_to, f2_points, f2_T); });

  add_fig3(&app, "fig3");
  add_fig4(&app, "fig4");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
