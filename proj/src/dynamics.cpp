#include "casimir/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir::dynamics {

CantileverParams CantileverParams::make(double m, double omega0, double gamma0) {
  CantileverParams c{m, omega0, gamma0, m * omega0 * omega0};
  c.validate();
  return c;
}

void CantileverParams::validate() const {
  if (!(m > 0.0) || !(omega0 > 0.0) || !(gamma0 > 0.0) || !(k > 0.0))
    throw DomainError("cantilever mass, frequency, damping and stiffness must be > 0");
  if (std::abs(k - m * omega0 * omega0) > 1e-12 * k) throw DomainError("cantilever stiffness must equal m omega0^2");
}

CoupledSystem CoupledSystem::with_gamma2(double gamma2) const {
  CoupledSystem s = *this;
  s.c2.gamma0 = gamma2;
  s.c2.validate();
  return s;
}

CoupledSystem shifted_frequencies(const CantileverParams& c1, const CantileverParams& c2, double dFdx) {
  c1.validate();
  c2.validate();
  const double s1 = 1.0 + dFdx / c1.k;
  const double s2 = 1.0 + dFdx / c2.k;
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    std::ostringstream os;
    os << "force gradient " << dFdx << " N/m exceeds a cantilever stiffness (" << c1.k << ", " << c2.k
       << " N/m): snap-in";
    throw SnapIn(os.str());
  }
  CoupledSystem sys;
  sys.c1 = c1;
  sys.c2 = c2;
  sys.J = -dFdx;
  sys.omega1p = c1.omega0 * std::sqrt(s1);
  sys.omega2p = c2.omega0 * std::sqrt(s2);
  sys.j_norm = sys.J / std::sqrt(c1.m * c2.m);
  return sys;
}

void DriveConfig::validate() const {
  if (!(F0 >= 0.0)) throw DomainError("drive amplitude must be >= 0");
  if (!(omega_d > 0.0)) throw DomainError("drive frequency must be > 0");
}

SteadyState steady_state(const CoupledSystem& sys, const DriveConfig& drive) {
  drive.validate();
  const double w = drive.omega_d;
  const complex d1(sys.omega1p * sys.omega1p - w * w, sys.c1.gamma0 * w);
  const complex d2(sys.omega2p * sys.omega2p - w * w, sys.c2.gamma0 * w);
  const double f = drive.F0 / sys.c1.m;
  const complex den = d1 * d2 - sys.j_norm * sys.j_norm;
  return {d2 * f / den, std::sqrt(sys.c1.m / sys.c2.m) * sys.j_norm * f / den};
}

namespace {

double detuning(const CoupledSystem& sys, double omega_d) {
  return sys.omega2p * sys.omega2p - omega_d * omega_d;
}

double lorentz_denominator(const CoupledSystem& sys, double omega_d) {
  const double delta = detuning(sys, omega_d);
  const double g = sys.c2.gamma0 * omega_d;
  return delta * delta + g * g;
}

}  // namespace

double gamma_cf(const CoupledSystem& sys, double omega_d) {
  return sys.J * sys.J * sys.c2.gamma0 / (sys.c1.m * sys.c2.m * lorentz_denominator(sys, omega_d));
}

double coupling_phase(const CoupledSystem& sys, double omega_d) {
  return std::atan2(detuning(sys, omega_d), sys.c2.gamma0 * omega_d);
}

ForceSplit force_split(const CoupledSystem& sys, const DriveConfig& drive, double x1, double v1) {
  drive.validate();
  const double w = drive.omega_d;
  const double scale = sys.J * sys.J / (sys.c2.m * lorentz_denominator(sys, w));
  ForceSplit out;
  out.F_conservative = scale * detuning(sys, w) * x1;
  out.F_CF = -scale * sys.c2.gamma0 * v1;
  out.F_couple = out.F_conservative + out.F_CF;
  out.gamma_CF = gamma_cf(sys, w);
  out.phase = coupling_phase(sys, w);
  return out;
}

FrictionMetrics friction_metrics(double F_CF, double v1, double m1, double radius, double separation) {
  if (!(F_CF > 0.0) || !(v1 > 0.0) || !(m1 > 0.0) || !(radius > 0.0) || !(separation > 0.0))
    throw DomainError("friction metrics need positive force, speed, mass, radius and separation");
  FrictionMetrics m;
  m.area = 2.0 / 3.0 * constants::pi * radius * separation;
  m.gamma_CF = F_CF / (m1 * v1);
  m.sigma_CF = F_CF / m.area;
  m.Gamma_CF = F_CF / (v1 * m.area);
  return m;
}

ModeDamping mode_damping(const CoupledSystem& sys) {
  const double m1 = sys.c1.m;
  const double m2 = sys.c2.m;
  // State (w x1, w x2, v1, v2): with positions scaled by a typical
  // frequency every entry is O(w), which keeps Re(lambda) accurate.
  const double w = 0.5 * (sys.omega1p + sys.omega2p);
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  A(0, 2) = w;
  A(1, 3) = w;
  A(2, 0) = -sys.omega1p * sys.omega1p / w;
  A(2, 1) = sys.J / (m1 * w);
  A(2, 2) = -sys.c1.gamma0;
  A(3, 0) = sys.J / (m2 * w);
  A(3, 1) = -sys.omega2p * sys.omega2p / w;
  A(3, 3) = -sys.c2.gamma0;

  Eigen::EigenSolver<Eigen::Matrix4d> es(A);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigenvalue solver failed on the coupled system");
  const auto vals = es.eigenvalues();
  const auto vecs = es.eigenvectors();

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vals(a).imag() > vals(b).imag(); });
  if (!(vals(order[1]).imag() > 0.0)) throw DomainError("coupled system has an overdamped mode");

  std::array<double, 2> weight1{};
  for (int k = 0; k < 2; ++k) {
    const auto v = vecs.col(order[k]);
    const double w1 = m1 * std::norm(v(0));
    const double w2 = m2 * std::norm(v(1));
    weight1[k] = w1 / (w1 + w2);
  }
  const int a = weight1[0] >= weight1[1] ? 0 : 1;
  const int b = 1 - a;
  ModeDamping out;
  out.gamma1 = -2.0 * vals(order[a]).real();
  out.gamma2 = -2.0 * vals(order[b]).real();
  out.omega1 = vals(order[a]).imag();
  out.omega2 = vals(order[b]).imag();
  out.overlap_ratio = weight1[b] > 0.0 ? weight1[a] / weight1[b] : std::numeric_limits<double>::infinity();
  out.ambiguous = out.overlap_ratio < kModeOverlapThreshold;
  return out;
}

ModeDamping effective_damping(const CoupledSystem& sys) {
  const ModeDamping m = mode_damping(sys);
  if (m.ambiguous) {
    std::ostringstream os;
    os << "modes hybridised (overlap ratio " << m.overlap_ratio << "): gamma assignment " << m.gamma1 << " / "
       << m.gamma2 << " rad/s is ambiguous";
    throw ModeAmbiguity(os.str(), m);
  }
  return m;
}

double coupling_for_gamma_cf(double gamma_CF, double gamma2, double omega2p, double m1, double m2) {
  if (!(gamma_CF >= 0.0) || !(gamma2 > 0.0) || !(omega2p > 0.0) || !(m1 > 0.0) || !(m2 > 0.0))
    throw DomainError("coupling calibration needs positive inputs");
  return omega2p * std::sqrt(gamma_CF * m1 * m2 * gamma2);
}

double bare_frequency_for_shifted(double omega_p, double J, double m) {
  const double w2 = omega_p * omega_p + J / m;
  if (!(w2 > 0.0) || !(m > 0.0)) throw DomainError("no positive bare frequency for this shift");
  return std::sqrt(w2);
}

}  // namespace casimir::dynamics
