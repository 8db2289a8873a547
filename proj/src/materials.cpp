#include "casimir/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/roots.hpp"

namespace casimir::materials {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

// Principal square root continued so that Im >= 0.
complex sqrt_decaying(complex z) {
  complex r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  return r;
}

// Frequency scale used for the small-w series and the resonance search.
double characteristic_frequency(const LorentzModel& m) {
  return m.form == DielectricForm::Drude ? m.gamma : m.omega_T;
}

}  // namespace

std::string to_string(DielectricForm form) {
  switch (form) {
    case DielectricForm::PhononPair:
      return "phonon_pair";
    case DielectricForm::SingleOscillator:
      return "single_oscillator";
    case DielectricForm::Drude:
      return "drude";
  }
  return "unknown";
}

DielectricForm form_from_string(const std::string& name) {
  const std::string n = lower(name);
  if (n == "phonon_pair" || n == "phononpair") return DielectricForm::PhononPair;
  if (n == "single_oscillator" || n == "singleoscillator") return DielectricForm::SingleOscillator;
  if (n == "drude") return DielectricForm::Drude;
  throw InvalidModel("unknown dielectric form '" + name + "'");
}

LorentzModel LorentzModel::phonon_pair(double eps_inf, double omega_L, double omega_T, double gamma) {
  LorentzModel m;
  m.form = DielectricForm::PhononPair;
  m.eps_inf = eps_inf;
  m.omega_L = omega_L;
  m.omega_T = omega_T;
  m.gamma = gamma;
  m.validate();
  return m;
}

LorentzModel LorentzModel::single_oscillator(double eps_inf, double B, double omega_T, double gamma) {
  LorentzModel m;
  m.form = DielectricForm::SingleOscillator;
  m.eps_inf = eps_inf;
  m.B = B;
  m.omega_T = omega_T;
  m.gamma = gamma;
  m.validate();
  return m;
}

LorentzModel LorentzModel::drude(double omega_p, double gamma, double eps_inf) {
  LorentzModel m;
  m.form = DielectricForm::Drude;
  m.eps_inf = eps_inf;
  m.omega_p = omega_p;
  m.gamma = gamma;
  m.validate();
  return m;
}

double LorentzModel::strength() const {
  switch (form) {
    case DielectricForm::PhononPair:
      return omega_L * omega_L - omega_T * omega_T;
    case DielectricForm::SingleOscillator:
      return B;
    case DielectricForm::Drude:
      return omega_p * omega_p / eps_inf;
  }
  return 0.0;
}

void LorentzModel::validate() const {
  if (!(eps_inf >= 1.0)) throw InvalidModel("eps_inf must be >= 1");
  if (!(gamma > 0.0)) throw InvalidModel("gamma must be > 0");
  switch (form) {
    case DielectricForm::PhononPair:
      if (!(omega_T > 0.0)) throw InvalidModel("omega_T must be > 0");
      if (!(omega_L > omega_T)) throw InvalidModel("phonon pair requires omega_L > omega_T");
      break;
    case DielectricForm::SingleOscillator:
      if (!(omega_T > 0.0)) throw InvalidModel("omega_T must be > 0");
      if (!(B > 0.0)) throw InvalidModel("oscillator strength B must be > 0");
      break;
    case DielectricForm::Drude:
      if (!(omega_T == 0.0)) throw InvalidModel("Drude form requires omega_T = 0");
      if (!(omega_p > 0.0)) throw InvalidModel("plasma frequency must be > 0");
      break;
  }
}

complex epsilon_real_axis(const LorentzModel& m, double omega) {
  const double w = std::abs(omega);
  const complex denom(m.omega_T * m.omega_T - w * w, -m.gamma * w);
  const complex eps = m.eps_inf * (1.0 + m.strength() / denom);
  return omega < 0.0 ? std::conj(eps) : eps;
}

double epsilon_imag_axis(const LorentzModel& m, double xi) {
  return m.eps_inf * (1.0 + m.strength() / (m.omega_T * m.omega_T + xi * xi + m.gamma * xi));
}

double xi2_epsilon_imag_axis(const LorentzModel& m, double xi) {
  if (m.form == DielectricForm::Drude) {
    // The 1/xi pole cancels against xi^2.
    return m.eps_inf * (xi * xi + m.strength() * xi / (xi + m.gamma));
  }
  return xi * xi * epsilon_imag_axis(m, xi);
}

complex reflection_p_nearfield(const LorentzModel& m, double omega) {
  const complex eps = epsilon_real_axis(m, omega);
  return (eps - 1.0) / (eps + 1.0);
}

double im_reflection_over_omega(const LorentzModel& m, double omega) {
  const double small = 1e-6 * characteristic_frequency(m);
  const double w = std::max(std::abs(omega), small);
  return reflection_p_nearfield(m, w).imag() / w;
}

complex reflection_retarded(const LorentzModel& m, double omega, double q, Polarization pol) {
  const complex eps = epsilon_real_axis(m, omega);
  const double k0 = omega / constants::c;
  if (k0 == 0.0 && q == 0.0) {
    // Static limit of the q >> w/c branch.
    return pol == Polarization::P ? (eps - 1.0) / (eps + 1.0) : complex(0.0);
  }
  const complex p = sqrt_decaying(complex(k0 * k0 - q * q, 0.0));
  const complex s = sqrt_decaying(eps * (k0 * k0) - q * q);
  if (pol == Polarization::P) return (eps * p - s) / (eps * p + s);
  return (p - s) / (p + s);
}

double surface_resonance(const LorentzModel& m) {
  m.validate();
  double lo = m.omega_T;
  double hi = 10.0 * m.omega_T;
  if (m.form == DielectricForm::Drude) {
    lo = 1e-3 * m.omega_p;
    hi = 10.0 * m.omega_p;
  }
  auto f = [&](double w) { return epsilon_real_axis(m, w).real() + 1.0; };

  constexpr int kScan = 1000;
  const double step = (hi - lo) / kScan;
  double prev = f(lo);
  int found = -1;
  for (int i = 1; i <= kScan; ++i) {
    const double cur = f(lo + i * step);
    if (prev < 0.0 && cur >= 0.0) found = i;
    prev = cur;
  }
  if (found < 0) throw NoSurfaceMode("Re eps never crosses -1 above omega_T: no surface mode");
  const auto root = numerics::bisect(f, lo + (found - 1) * step, lo + found * step, 1e-10);
  if (!root) throw NoSurfaceMode("surface-mode bracket lost during bisection");
  return *root;
}

double critical_velocity(const LorentzModel& m, double separation) {
  if (!(separation > 0.0)) throw DomainError("separation must be > 0");
  const double ws = surface_resonance(m);
  const double log_r = std::log(std::abs(reflection_p_nearfield(m, ws)));
  if (!(log_r > 0.0)) throw NoSurfaceMode("|R_p(omega_s)| <= 1: no resonant photon tunnelling");
  return 2.0 * ws * separation / log_r;
}

MaterialCatalog MaterialCatalog::builtin() {
  using constants::hz;
  MaterialCatalog cat;
  cat.add("SiC", LorentzModel::phonon_pair(6.7, 1.8e14, 1.5e14, 8.9e11));
  cat.add("BST", LorentzModel::phonon_pair(2.9, 1.3e10, 5.7e9, 2.8e8));
  cat.add("Metamaterial", LorentzModel::single_oscillator(10.0, 5e9, hz(5000.0), hz(100.0)));
  cat.add("Gold", LorentzModel::drude(1.37e16, 5.3e13));
  return cat;
}

void MaterialCatalog::add(const std::string& name, const LorentzModel& model) {
  model.validate();
  for (auto it = models_.begin(); it != models_.end(); ++it) {
    if (lower(it->first) == lower(name)) {
      models_.erase(it);
      break;
    }
  }
  models_[name] = model;
}

const LorentzModel& MaterialCatalog::at(const std::string& name) const {
  const std::string key = lower(name);
  for (const auto& [n, m] : models_)
    if (lower(n) == key) return m;
  throw DomainError("unknown material '" + name + "'");
}

}  // namespace casimir::materials
