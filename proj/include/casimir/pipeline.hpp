#pragma once

// Virtual-experiment workflows built on the simulator: steady-state
// frequency sweeps, PID damping calibration, the friction-force loops and
// the damping sweeps.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/dynamics.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/lorentzian.hpp"
#include "casimir/materials.hpp"
#include "casimir/signal.hpp"
#include "casimir/simulator.hpp"

namespace casimir::experiment {

using constants::hz;

/// Cantilever pair around the measured separation. Frequencies and damping
/// rates in rad/s, masses in kg, lengths in m.
struct OperatingPoint {
  double m1 = 1.9e-10;
  double m2 = 1.2e-10;
  double omega1 = hz(4564.7);
  double omega2 = hz(4548.9);           // natural, before PID
  double gamma1 = hz(3.7);
  double gamma2_natural = hz(6.7);
  double gamma2 = hz(41.6);             // PID-tuned
  double omega2p = hz(4521.0);          // closed-loop shifted frequency at `separation`
  double separation = 154e-9;
  double radius = 35e-6;
  double temperature = 300.0;
  double gamma_cf = hz(7.9);            // reported friction damping at `separation`

  dynamics::CantileverParams cantilever1() const;
  dynamics::CantileverParams cantilever2() const;  // natural parameters
};

/// PID gains that put cantilever 2 at damping `gamma2` and shifted
/// frequency `omega2p` under coupling J.
PidConfig pid_for_target(const OperatingPoint& op, double J, double gamma2, double omega2p);

/// D giving the requested damping from the natural one.
double derivative_gain_for(double gamma2, double gamma2_natural, double c_D = kDerivativeCalibration);

/// J = -dF/dx of a gold sphere (radius) over a gold plate.
double gold_coupling(double separation, double radius, double temperature,
                     const materials::MaterialCatalog& catalog = materials::MaterialCatalog::builtin());

struct SweepSettings {
  std::size_t samples_per_period = 50;   // lower bound; raised when needed
  std::size_t demod_periods = 200;
  double settle_decays = 20.0;           // discard settle_decays / gamma_min
  double noise_temperature = 0.0;        // K; 0 = noiseless
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Step size, settling time and window for one drive frequency.
struct RunPlan {
  double dt = 0.0;
  double settle = 0.0;
  double duration = 0.0;
};
RunPlan plan_run(const dynamics::CoupledSystem& sys, const PidConfig& pid, double omega_d, const SweepSettings& s);

struct SweepPoint {
  double omega = 0.0;
  std::complex<double> X;   // phasor of the observed cantilever
  double amplitude() const { return std::abs(X); }
};

/// Demodulated steady-state phasor of cantilever `observed` with cantilever
/// `driven` forced at omega_d. In noiseless runs, throws ConvergenceFailure
/// when the amplitude drifts by more than 0.1% across the window.
SweepPoint steady_response(const dynamics::CoupledSystem& sys, const PidConfig& pid, double F0, double omega_d,
                           const SweepSettings& s, int driven = 1, int observed = 1, std::uint64_t seed_offset = 0);

std::vector<SweepPoint> frequency_sweep(const dynamics::CoupledSystem& sys, const PidConfig& pid, double F0,
                                        std::span<const double> omegas, const SweepSettings& s, int driven = 1,
                                        int observed = 1);

struct DampingMeasurement {
  LorentzianFit fit;
  std::vector<SweepPoint> coarse;
  std::vector<SweepPoint> fine;
};

/// Coarse sweep over center +- half_span, then a fine sweep over +- 3 FWHM
/// around the coarse peak, then a Lorentzian fit of the fine sweep.
DampingMeasurement measure_damping(const dynamics::CoupledSystem& sys, const PidConfig& pid, double F0,
                                   double center, double half_span, const SweepSettings& s, int cantilever = 1,
                                   std::size_t coarse_points = 41, std::size_t fine_points = 31);

struct PidCalibrationPoint {
  double D = 0.0;
  double gamma2 = 0.0;   // fitted, rad/s
  double omega2 = 0.0;   // fitted centre, rad/s
};

struct PidCalibration {
  std::vector<PidCalibrationPoint> points;
  double gamma2_0 = 0.0;  // intercept of gamma2 = gamma2_0 + c_D |D|
  double c_D = 0.0;       // fitted slope, rad/s per unit |D|
};

/// Frequency sweep of the isolated cantilever 2 at every gain in the grid
/// (which must contain D = 0).
PidCalibration calibrate_pid(const dynamics::CantileverParams& c2, std::span<const double> gains,
                             const SweepSettings& s);

struct DampingCurve {
  std::vector<double> x;         // gamma2 (rad/s) or separation (m)
  std::vector<double> J;         // N/m
  std::vector<double> gamma1_fit;
  std::vector<double> gamma1_analytic;
  std::vector<double> omega1_fit;
  std::vector<bool> ambiguous;
};

/// Cantilever-1 damping against the PID-tuned damping of cantilever 2.
/// `sys` carries the natural cantilever 2; `base` supplies the stiffness
/// offset P, and D is set from each target gamma2.
DampingCurve damping_vs_gamma2_sweep(const dynamics::CoupledSystem& sys, const PidConfig& base,
                                     std::span<const double> gamma2_grid, const SweepSettings& s,
                                     double F0 = 1e-12);

/// Cantilever-1 damping against separation, with J(d) from the gold
/// Lifshitz gradient and fixed PID gains.
DampingCurve damping_vs_separation_sweep(const dynamics::CantileverParams& c1, const dynamics::CantileverParams& c2,
                                         const PidConfig& pid, std::span<const double> separations, double radius,
                                         double temperature, const SweepSettings& s, double F0 = 1e-12,
                                         const materials::MaterialCatalog& catalog = materials::MaterialCatalog::builtin());

/// Non-decreasing y(x) with non-increasing slopes whose last value is at
/// least 90% of `ceiling`.
bool rises_then_saturates(std::span<const double> x, std::span<const double> y, double ceiling);

/// Supremum of gamma1_eff over gamma2 at fixed coupling and frequencies,
/// evaluated analytically on a log grid up to 100 x the largest frequency gap.
double gamma1_ceiling(const dynamics::CoupledSystem& sys_closed_loop);

struct LoopPanel {
  double detuning = 0.0;        // rad/s, omega_d - omega2'
  double omega_d = 0.0;
  std::vector<CrossingSample> samples;     // all amplitude levels
  LineFit fit;                              // F_CF against v1
  double slope_analytic = 0.0;              // -m1 gamma_CF(omega_d)
  double phase = 0.0;                       // Lissajous, rad
  double phase_analytic = 0.0;
  TimeSeries loop;                          // last periods of the largest level
};

/// One friction-loop panel: drive levels chosen so the largest gives peak
/// |v1| = v_peak, zero-crossing samples from every level.
LoopPanel friction_loop(const dynamics::CoupledSystem& sys, const PidConfig& pid, double detuning,
                        const SweepSettings& s, double v_peak = 4e-4, std::size_t levels = 4,
                        std::size_t loop_periods = 3);

}  // namespace casimir::experiment
