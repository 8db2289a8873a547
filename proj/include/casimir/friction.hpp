#pragma once

// Non-contact fluctuation-induced friction between two half-spaces in
// parallel relative motion, non-relativistic regime.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::friction {

/// n(w) = 1 / (exp(hbar w / k_B T) - 1), continued to w < 0 as -1 - n(-w).
/// T = 0 gives 0 for w > 0 and -1 for w < 0.
double bose_occupation(double omega, double temperature);

/// Plate 1 (material a, T1) is at rest, plate 2 (material b, T2) slides
/// along x with `velocity`.
struct SlidingConfig {
  materials::LorentzModel a;
  materials::LorentzModel b;
  double separation = 0.0;   // m
  double velocity = 0.0;     // m/s
  double T1 = 300.0;         // K
  double T2 = 300.0;         // K
  bool retarded = false;     // full Fresnel amplitudes with both polarisations

  static constexpr double kMaxSpeed = 1e8;  // m/s
  void validate() const;
};

struct FrictionOptions {
  double rel_tol = 1e-4;           // outer (q_x) integral
  double q_cutoff = 40.0;          // q_max = q_cutoff / d
  std::size_t max_panels_omega = 4000;
  std::size_t max_panels_q = 400;
};

struct FrictionResult {
  double stress = 0.0;        // N/m^2, opposes the velocity
  double error = 0.0;         // outer quadrature estimate
  std::size_t evaluations = 0;
};

FrictionResult friction_stress_detailed(const SlidingConfig& cfg, const FrictionOptions& opt = {});
double friction_stress(const SlidingConfig& cfg, const FrictionOptions& opt = {});

struct FrictionCurve {
  std::vector<double> velocities;   // m/s
  std::vector<double> stress;       // N/m^2 (NaN where invalid)
  std::vector<bool> valid;
  std::vector<std::string> errors;  // empty where valid
  /// Positive coefficient mu with stress ~ -mu v, from a least-squares fit
  /// through the origin of the three lowest-velocity valid points.
  std::optional<double> linear_coefficient;
  double peak_velocity = 0.0;       // argmax |stress| / v over valid points
  double resonance_velocity = 0.0;  // argmax |stress| over valid points
};

/// Evaluates every grid point (in parallel when threads != 1); failures are
/// recorded per point rather than thrown.
FrictionCurve friction_curve(const SlidingConfig& base, std::span<const double> velocities,
                             const FrictionOptions& opt = {}, unsigned threads = 0);

/// n log-spaced speeds on [v0 * 10^-4.5, min(v0 * 10^1.5, kMaxSpeed)].
std::vector<double> default_velocity_grid(double critical_velocity, std::size_t n = 40);

}  // namespace casimir::friction
