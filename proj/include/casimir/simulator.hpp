#pragma once

// Fixed-step RK4 integration of the coupled-cantilever equations with a
// harmonic drive, PID feedback on one cantilever and optional thermal
// force noise.

#include <cstdint>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/dynamics.hpp"

namespace casimir::experiment {

/// Rad/s of added damping per unit of derivative gain: D = -8e-6 takes a
/// natural 2 pi x 6.7 Hz to 2 pi x 41.6 Hz.
constexpr double kDerivativeCalibration = constants::two_pi * 34.9 / 8e-6;

struct PidConfig {
  double D = 0.0;      // derivative gain; added damping -kDerivativeCalibration * D
  double P = 0.0;      // fractional added stiffness; force -P k x
  int target = 2;      // cantilever the loop acts on (1 or 2)
  double c_D = kDerivativeCalibration;

  double added_damping() const { return -c_D * D; }
  void validate() const;
};

/// System seen by the closed loop: damping and stiffness of the target
/// cantilever include the PID channels.
dynamics::CoupledSystem apply_pid(const dynamics::CoupledSystem& sys, const PidConfig& pid);

struct State {
  double x1 = 0.0, v1 = 0.0, x2 = 0.0, v2 = 0.0;
};

struct SimulationRun {
  double dt = 0.0;                // s
  double duration = 0.0;          // s
  std::uint64_t seed = 0;
  double noise_temperature = 0.0; // K; 0 disables thermal force noise
  int driven = 1;                 // cantilever carrying F0 cos(wd t)
  State initial;
  double record_from = 0.0;       // s; samples before this are not stored
  std::size_t record_every = 1;
};

struct TimeSeries {
  std::vector<double> t, x1, v1, x2, v2, F_couple;
  double omega_d = 0.0;
  double dt = 0.0;         // spacing between stored samples
  std::size_t size() const { return t.size(); }
};

/// Largest admissible step: (2 pi / w_max) / 50 over both shifted
/// frequencies (with PID) and the drive.
double max_step(const dynamics::CoupledSystem& sys, const dynamics::DriveConfig& drive, const PidConfig& pid);

/// Throws StepTooLarge if run.dt exceeds max_step. Deterministic given seed.
TimeSeries simulate(const dynamics::CoupledSystem& sys, const dynamics::DriveConfig& drive, const PidConfig& pid,
                    const SimulationRun& run);

/// sum 1/2 m v^2 + 1/2 m w'^2 x^2 - J x1 x2 for the closed-loop system.
double mechanical_energy(const dynamics::CoupledSystem& sys, const State& s);

}  // namespace casimir::experiment
