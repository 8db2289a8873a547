#pragma once

// Equilibrium Casimir interaction between half-spaces in the Matsubara
// representation, and its proximity-force extension to a sphere.

#include <cstddef>
#include <variant>

#include "casimir/materials.hpp"

namespace casimir::lifshitz {

/// r_TM = r_TE = 1 at every frequency.
struct PerfectConductor {
  bool operator==(const PerfectConductor&) const = default;
};

using Surface = std::variant<materials::LorentzModel, PerfectConductor>;

struct PlatePairConfig {
  Surface a;
  Surface b;
  double separation = 0.0;   // m
  double temperature = 0.0;  // K; 0 selects the continuous xi integral

  void validate() const;
};

struct SphereGeometry {
  double radius = 0.0;  // m
};

struct LifshitzOptions {
  double rel_tol = 1e-8;       // per k-integral
  double sum_tol = 1e-9;       // stop once |term_l| < sum_tol * |sum|
  std::size_t max_terms = 100'000;
};

struct LifshitzResult {
  double value = 0.0;
  std::size_t terms = 0;     // Matsubara terms summed (0 for T = 0)
  double last_ratio = 0.0;   // |last term / sum|
};

/// Reflection amplitudes at imaginary frequency xi and in-plane wavevector
/// k (both >= 0).
struct ImaginaryReflection {
  double tm;
  double te;
};
ImaginaryReflection reflection_imag_axis(const Surface& surface, double xi, double k);

/// Free energy per unit area E(x, T) in J/m^2.
LifshitzResult casimir_energy_detailed(const PlatePairConfig& cfg, const LifshitzOptions& opt = {});
double casimir_energy(const PlatePairConfig& cfg, const LifshitzOptions& opt = {});

/// Plate-plate pressure -dE/dx in Pa (negative = attraction).
LifshitzResult casimir_pressure_detailed(const PlatePairConfig& cfg, const LifshitzOptions& opt = {});
double casimir_pressure(const PlatePairConfig& cfg, const LifshitzOptions& opt = {});

/// Un-primed Matsubara term l of E(x, T), including the k_B T / 2 pi
/// prefactor; E = 0.5 * term(0) + sum_{l >= 1} term(l).
double matsubara_energy_term(const PlatePairConfig& cfg, std::size_t l, const LifshitzOptions& opt = {});

/// F = -2 pi R E(x, T). Positive values pull the sphere toward the plate.
double pfa_force(const PlatePairConfig& cfg, const SphereGeometry& sphere, const LifshitzOptions& opt = {});

/// dF/dx = 2 pi R P(x, T), from the analytically differentiated integrand.
/// The coupling constant of the oscillator model is J = -dF/dx.
double force_gradient(const PlatePairConfig& cfg, const SphereGeometry& sphere, const LifshitzOptions& opt = {});

/// PFA is trusted for x / R <= 0.05.
bool pfa_valid(double separation, const SphereGeometry& sphere);

}  // namespace casimir::lifshitz
