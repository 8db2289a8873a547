#include "casimir/lifshitz.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::lifshitz {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

namespace {

// Integrand truncation in u = 2 x q, measured from the lower limit.
constexpr double kUSpan = 60.0;

enum class Quantity { Energy, Pressure };

// Sum over polarisations of ln(1 - r_a r_b e^{-u}) (energy) or
// r_a r_b e^{-u} / (1 - r_a r_b e^{-u}) (pressure).
double polarisation_sum(const PlatePairConfig& cfg, double xi, double k, double u, Quantity what) {
  const auto ra = reflection_imag_axis(cfg.a, xi, k);
  const auto rb = reflection_imag_axis(cfg.b, xi, k);
  const double decay = std::exp(-u);
  const double a_tm = ra.tm * rb.tm * decay;
  const double a_te = ra.te * rb.te * decay;
  if (what == Quantity::Energy) return std::log1p(-a_tm) + std::log1p(-a_te);
  return a_tm / (1.0 - a_tm) + a_te / (1.0 - a_te);
}

void require(const numerics::QuadratureResult& r, const std::string& where) {
  if (!r.converged) {
    std::ostringstream os;
    os << where << ": quadrature did not converge (error " << r.error << " on value " << r.value
       << ", worst panel [" << r.worst_lo << ", " << r.worst_hi << "])";
    throw ConvergenceFailure(os.str());
  }
}

// Integral over u in [u0, u0 + span] of u^p * polarisation_sum, where
// u0 = 2 x xi / c and p = 1 (energy) or 2 (pressure).
double u_integral(const PlatePairConfig& cfg, double xi, Quantity what, double rel_tol) {
  const double x = cfg.separation;
  const double u0 = 2.0 * x * xi / c;
  auto f = [&](double u) {
    const double k = std::sqrt(std::max(0.0, u * u - u0 * u0)) / (2.0 * x);
    const double s = polarisation_sum(cfg, xi, k, u, what);
    return what == Quantity::Energy ? u * s : u * u * s;
  };
  const double span[] = {u0, u0 + 0.5, u0 + 2.0, u0 + 6.0, u0 + 15.0, u0 + 30.0, u0 + kUSpan};
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  const auto r = numerics::integrate(f, std::span<const double>(span), opt);
  require(r, "Lifshitz k-integral");
  return r.value;
}

// Matsubara term l without the prime, in units that the caller scales:
// energy: (kT / 2 pi) * (1 / 4x^2) * I,  pressure: -(kT / 2 pi) * (1 / 4x^3) * I.
double scaled_term(const PlatePairConfig& cfg, std::size_t l, Quantity what, double rel_tol) {
  const double x = cfg.separation;
  const double T = cfg.temperature;
  const double xi = 2.0 * pi * k_B * T * static_cast<double>(l) / hbar;
  const double integral = u_integral(cfg, xi, what, rel_tol);
  const double pref = k_B * T / (2.0 * pi);
  if (what == Quantity::Energy) return pref * integral / (4.0 * x * x);
  return -pref * integral / (4.0 * x * x * x);
}

LifshitzResult zero_temperature(const PlatePairConfig& cfg, Quantity what, const LifshitzOptions& opt) {
  const double x = cfg.separation;
  // xi = c t / 2x; the inner u-integral starts at u = t.
  auto outer = [&](double t) {
    const double xi = c * t / (2.0 * x);
    return u_integral(cfg, xi, what, 0.1 * opt.rel_tol);
  };
  const double span[] = {0.0, 0.5, 2.0, 6.0, 15.0, 30.0, 80.0};
  numerics::QuadratureOptions qo;
  qo.rel_tol = opt.rel_tol;
  const auto r = numerics::integrate(outer, std::span<const double>(span), qo);
  require(r, "Lifshitz xi-integral (T = 0)");
  LifshitzResult out;
  if (what == Quantity::Energy)
    out.value = hbar * c / (32.0 * pi * pi * x * x * x) * r.value;
  else
    out.value = -hbar * c / (32.0 * pi * pi * x * x * x * x) * r.value;
  return out;
}

LifshitzResult matsubara_sum(const PlatePairConfig& cfg, Quantity what, const LifshitzOptions& opt) {
  cfg.validate();
  if (cfg.temperature == 0.0) return zero_temperature(cfg, what, opt);

  LifshitzResult out;
  double sum = 0.0;
  double ratio = 1.0;
  for (std::size_t l = 0; l < opt.max_terms; ++l) {
    double term = scaled_term(cfg, l, what, opt.rel_tol);
    if (l == 0) term *= 0.5;
    sum += term;
    ratio = sum != 0.0 ? std::abs(term / sum) : (term == 0.0 ? 0.0 : 1.0);
    out.terms = l + 1;
    if (l > 0 && ratio < opt.sum_tol) {
      out.value = sum;
      out.last_ratio = ratio;
      return out;
    }
  }
  std::ostringstream os;
  os << "Matsubara sum not converged after " << out.terms << " terms (last-term ratio " << ratio << ")";
  throw ConvergenceFailure(os.str());
}

}  // namespace

void PlatePairConfig::validate() const {
  if (!(separation > 0.0)) throw DomainError("plate separation must be > 0");
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  for (const Surface* s : {&a, &b})
    if (const auto* m = std::get_if<materials::LorentzModel>(s)) m->validate();
}

ImaginaryReflection reflection_imag_axis(const Surface& surface, double xi, double k) {
  if (std::holds_alternative<PerfectConductor>(surface)) return {1.0, 1.0};
  const auto& m = std::get<materials::LorentzModel>(surface);
  const double q0 = std::sqrt(k * k + xi * xi / (c * c));
  const double kk = std::sqrt(k * k + materials::xi2_epsilon_imag_axis(m, xi) / (c * c));
  ImaginaryReflection r{};
  r.te = (q0 + kk) > 0.0 ? (q0 - kk) / (q0 + kk) : 0.0;
  if (xi == 0.0) {
    if (m.form == materials::DielectricForm::Drude) {
      r.tm = 1.0;
    } else {
      const double eps0 = materials::epsilon_imag_axis(m, 0.0);
      r.tm = (eps0 - 1.0) / (eps0 + 1.0);
    }
  } else {
    const double eps = materials::epsilon_imag_axis(m, xi);
    r.tm = (eps * q0 - kk) / (eps * q0 + kk);
  }
  return r;
}

LifshitzResult casimir_energy_detailed(const PlatePairConfig& cfg, const LifshitzOptions& opt) {
  return matsubara_sum(cfg, Quantity::Energy, opt);
}

double casimir_energy(const PlatePairConfig& cfg, const LifshitzOptions& opt) {
  return casimir_energy_detailed(cfg, opt).value;
}

LifshitzResult casimir_pressure_detailed(const PlatePairConfig& cfg, const LifshitzOptions& opt) {
  return matsubara_sum(cfg, Quantity::Pressure, opt);
}

double casimir_pressure(const PlatePairConfig& cfg, const LifshitzOptions& opt) {
  return casimir_pressure_detailed(cfg, opt).value;
}

double matsubara_energy_term(const PlatePairConfig& cfg, std::size_t l, const LifshitzOptions& opt) {
  cfg.validate();
  if (!(cfg.temperature > 0.0)) throw DomainError("Matsubara terms need T > 0");
  return scaled_term(cfg, l, Quantity::Energy, opt.rel_tol);
}

double pfa_force(const PlatePairConfig& cfg, const SphereGeometry& sphere, const LifshitzOptions& opt) {
  if (!(sphere.radius > 0.0)) throw DomainError("sphere radius must be > 0");
  return -2.0 * pi * sphere.radius * casimir_energy(cfg, opt);
}

double force_gradient(const PlatePairConfig& cfg, const SphereGeometry& sphere, const LifshitzOptions& opt) {
  if (!(sphere.radius > 0.0)) throw DomainError("sphere radius must be > 0");
  return 2.0 * pi * sphere.radius * casimir_pressure(cfg, opt);
}

bool pfa_valid(double separation, const SphereGeometry& sphere) {
  return separation / sphere.radius <= 0.05;
}

}  // namespace casimir::lifshitz
