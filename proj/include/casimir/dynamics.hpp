#pragma once

// Two point-mass cantilevers coupled through the linearised Casimir force
// F(x) ~ F(x0) + (dF/dx) dx, cantilever 1 driven by F0 cos(wd t):
//
//   m1 x1'' + m1 g1 x1' + m1 w1'^2 x1 = J x2 + F0 cos(wd t)
//   m2 x2'' + m2 g2 x2' + m2 w2'^2 x2 = J x1
//
// Steady-state phasors follow x(t) = Re[X exp(i wd t)].

#include <complex>

#include "casimir/error.hpp"

namespace casimir::dynamics {

using complex = std::complex<double>;

struct CantileverParams {
  double m = 0.0;       // kg
  double omega0 = 0.0;  // rad/s
  double gamma0 = 0.0;  // rad/s
  double k = 0.0;       // N/m, m * omega0^2

  static CantileverParams make(double m, double omega0, double gamma0);
  void validate() const;
};

struct CoupledSystem {
  CantileverParams c1;
  CantileverParams c2;
  double J = 0.0;        // N/m, -dF/dx (> 0 for attraction)
  double omega1p = 0.0;  // rad/s
  double omega2p = 0.0;
  double j_norm = 0.0;   // J / sqrt(m1 m2), s^-2

  /// Same system with cantilever 2 damping replaced (PID-tuned).
  CoupledSystem with_gamma2(double gamma2) const;
};

/// w_j' = w_j sqrt(1 + dFdx / k_j). Throws SnapIn when 1 + dFdx / k_j <= 0.
CoupledSystem shifted_frequencies(const CantileverParams& c1, const CantileverParams& c2, double dFdx);

struct DriveConfig {
  double F0 = 0.0;       // N
  double omega_d = 0.0;  // rad/s
  void validate() const;
};

struct SteadyState {
  complex X1;  // m
  complex X2;
};

SteadyState steady_state(const CoupledSystem& sys, const DriveConfig& drive);

struct ForceSplit {
  double F_couple = 0.0;        // N, J x2
  double F_conservative = 0.0;  // in phase with x1
  double F_CF = 0.0;            // in phase with -v1
  double gamma_CF = 0.0;        // rad/s, -F_CF / (m1 v1)
  double phase = 0.0;           // rad, arg(F_couple) - arg(-v1)
};

ForceSplit force_split(const CoupledSystem& sys, const DriveConfig& drive, double x1, double v1);

/// Friction damping rate J^2 g2 / (m1 m2 [(w2'^2 - wd^2)^2 + g2^2 wd^2]).
double gamma_cf(const CoupledSystem& sys, double omega_d);

/// atan2(w2'^2 - wd^2, g2 wd): steady-state angle between -v1 and J x2.
double coupling_phase(const CoupledSystem& sys, double omega_d);

struct FrictionMetrics {
  double gamma_CF = 0.0;  // rad/s
  double area = 0.0;      // m^2, (2/3) pi R d
  double sigma_CF = 0.0;  // N/m^2
  double Gamma_CF = 0.0;  // kg s^-1 m^-2
};

FrictionMetrics friction_metrics(double F_CF, double v1, double m1, double radius, double separation);

struct ModeDamping {
  double gamma1 = 0.0;      // of the mode carrying most of cantilever 1
  double gamma2 = 0.0;
  double omega1 = 0.0;      // damped mode frequencies
  double omega2 = 0.0;
  double overlap_ratio = 0.0;  // >= 1; near 1 means hybridised modes
  bool ambiguous = false;
};

/// -2 Re(lambda) of the two modes of the 4x4 first-order system. Never
/// throws on hybridisation; `ambiguous` is set instead.
ModeDamping mode_damping(const CoupledSystem& sys);

class ModeAmbiguity : public DomainError {
 public:
  ModeAmbiguity(const std::string& what, ModeDamping modes) : DomainError(what), modes_(modes) {}
  /// Assignment by largest overlap; the swapped assignment is the other one.
  const ModeDamping& modes() const noexcept { return modes_; }

 private:
  ModeDamping modes_;
};

constexpr double kModeOverlapThreshold = 1.05;

/// (gamma1_eff, gamma2_eff); throws ModeAmbiguity when the overlap ratio is
/// below kModeOverlapThreshold.
ModeDamping effective_damping(const CoupledSystem& sys);

/// Coupling that produces friction damping gamma_CF at resonant drive:
/// J = w2' sqrt(gamma_CF m1 m2 g2).
double coupling_for_gamma_cf(double gamma_CF, double gamma2, double omega2p, double m1, double m2);

/// Bare frequency w0 such that the shifted frequency equals omega_p under
/// coupling J: w0 = sqrt(omega_p^2 + J / m).
double bare_frequency_for_shifted(double omega_p, double J, double m);

}  // namespace casimir::dynamics
