#pragma once

// Dielectric response of the plate materials: Lorentz-oscillator and Drude
// permittivities on the real and imaginary frequency axes, reflection
// amplitudes, surface-mode frequency and the resonant-tunnelling velocity.

#include <complex>
#include <map>
#include <string>

namespace casimir::materials {

using complex = std::complex<double>;

enum class DielectricForm {
  PhononPair,        // eps_inf (1 + (wL^2 - wT^2) / (wT^2 - w^2 - i g w))
  SingleOscillator,  // eps_inf (1 + B / (wT^2 - w^2 - i g w))
  Drude,             // eps_inf - wp^2 / (w^2 + i g w)
};

std::string to_string(DielectricForm form);
DielectricForm form_from_string(const std::string& name);

/// All fields are SI: angular frequencies and damping in rad/s, B in s^-2.
/// Only the strength parameter matching `form` is read (omega_L, B or
/// omega_p).
struct LorentzModel {
  DielectricForm form = DielectricForm::PhononPair;
  double eps_inf = 1.0;
  double omega_T = 0.0;
  double omega_L = 0.0;
  double B = 0.0;
  double omega_p = 0.0;
  double gamma = 0.0;

  static LorentzModel phonon_pair(double eps_inf, double omega_L, double omega_T, double gamma);
  static LorentzModel single_oscillator(double eps_inf, double B, double omega_T, double gamma);
  static LorentzModel drude(double omega_p, double gamma, double eps_inf = 1.0);

  /// Numerator S of eps_inf (1 + S / (wT^2 - w^2 - i g w)); the three forms
  /// share that shape (Drude has wT = 0, S = wp^2 / eps_inf).
  double strength() const;

  /// Throws InvalidModel when an invariant is violated.
  void validate() const;

  bool operator==(const LorentzModel&) const = default;
};

/// eps(w) for real w >= 0. Negative w returns conj(eps(|w|)).
complex epsilon_real_axis(const LorentzModel& model, double omega);

/// eps(i xi) for xi >= 0. Diverges at xi = 0 for Drude.
double epsilon_imag_axis(const LorentzModel& model, double xi);

/// xi^2 eps(i xi), finite at xi = 0 for every form.
double xi2_epsilon_imag_axis(const LorentzModel& model, double xi);

/// (eps - 1) / (eps + 1).
complex reflection_p_nearfield(const LorentzModel& model, double omega);

/// Im R_p(w) / w, even in w and finite at w = 0 (small-w series below
/// 1e-6 of the model's characteristic frequency).
double im_reflection_over_omega(const LorentzModel& model, double omega);

enum class Polarization { P, S };

/// Fresnel amplitudes of a half-space for in-plane wavevector q (1/m).
/// Square roots are taken with Im >= 0 so evanescent fields decay.
complex reflection_retarded(const LorentzModel& model, double omega, double q, Polarization pol);

/// Root of Re eps(w) = -1 on the upward crossing above omega_T. Throws
/// NoSurfaceMode when no crossing exists.
double surface_resonance(const LorentzModel& model);

/// 2 w_s d / ln|R_p(w_s)|.
double critical_velocity(const LorentzModel& model, double separation);

/// Named models. Names are unique by construction.
class MaterialCatalog {
 public:
  static MaterialCatalog builtin();

  /// Validates the model; replaces any entry whose name matches
  /// case-insensitively.
  void add(const std::string& name, const LorentzModel& model);
  /// Case-insensitive lookup; throws DomainError for unknown names.
  const LorentzModel& at(const std::string& name) const;
  bool contains(const std::string& name) const { return models_.count(name) != 0; }
  const std::map<std::string, LorentzModel>& entries() const { return models_; }

 private:
  std::map<std::string, LorentzModel> models_;
};

}  // namespace casimir::materials
