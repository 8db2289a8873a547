#pragma once

// Data behind each figure, shared by the command-line tool and the
// acceptance checks.

#include <string>
#include <vector>

#include "casimir/friction.hpp"
#include "casimir/materials.hpp"
#include "casimir/pipeline.hpp"

namespace casimir::figures {

struct Fig1eMaterial {
  std::string name;
  double omega_s = 0.0;  // rad/s
  double V0 = 0.0;       // m/s
  friction::FrictionCurve curve;
};

struct Fig1e {
  double separation = 100e-9;
  double temperature = 300.0;
  std::vector<Fig1eMaterial> materials;
  /// linear coefficient of `materials.back()` over `materials.front()`
  /// (Metamaterial over SiC for the default list); 0 when undefined.
  double coefficient_ratio = 0.0;
};

Fig1e fig1e(const materials::MaterialCatalog& catalog,
            const std::vector<std::string>& names = {"SiC", "BST", "Metamaterial"}, double separation = 100e-9,
            double temperature = 300.0, std::size_t points = 40, unsigned threads = 0,
            const friction::FrictionOptions& opt = {});

struct GradientRow {
  double separation = 0.0;     // m
  double energy = 0.0;         // J/m^2
  double force = 0.0;          // N
  double gradient = 0.0;       // dF/dx, N/m
  double gradient_over_R = 0.0;  // N/m^2
};

/// Sphere-plate Casimir curve on a uniform separation grid.
std::vector<GradientRow> casimir_curve(const materials::MaterialCatalog& catalog, const std::string& material,
                                       double radius, double from, double to, std::size_t points,
                                       double temperature, unsigned threads = 0);

struct Fig3 {
  experiment::OperatingPoint op;
  double J_lifshitz = 0.0;     // gold gradient at op.separation
  double J_calibrated = 0.0;   // from op.gamma_cf
  double J = 0.0;              // the one simulated
  dynamics::CoupledSystem system;   // natural cantilever 2
  experiment::PidConfig pid;
  std::vector<experiment::LoopPanel> panels;
  /// From the resonant slope at the quoted speed 0.38 mm/s.
  dynamics::FrictionMetrics from_slope;
  /// Quoted operating values directly: F_CF = 3.4 pN, v1 = 0.38 mm/s.
  dynamics::FrictionMetrics quoted;
};

Fig3 fig3(const experiment::OperatingPoint& op, const experiment::SweepSettings& s,
          const std::vector<double>& detunings_hz = {0.0, -10.0, -21.0}, bool lifshitz_coupling = false,
          const materials::MaterialCatalog& catalog = materials::MaterialCatalog::builtin());

struct Fig4 {
  experiment::OperatingPoint op;
  double separation = 99e-9;
  double J = 0.0;              // gold gradient at `separation`
  experiment::PidConfig pid;   // stiffness channel fixed; D varied in panel (a)
  experiment::PidCalibration calibration;
  experiment::DampingCurve vs_gamma2;
  double ceiling = 0.0;        // analytic supremum over gamma2
  bool saturates = false;
  experiment::DampingCurve vs_separation;
};

Fig4 fig4(const experiment::OperatingPoint& op, const experiment::SweepSettings& s,
          const std::vector<double>& gamma2_hz = {6.7, 15.0, 25.0, 41.6, 55.0, 70.0, 91.0},
          const std::vector<double>& separations = {99e-9, 110e-9, 125e-9, 140e-9, 154e-9, 175e-9, 200e-9,
                                                    250e-9, 300e-9},
          const std::vector<double>& pid_gains = {0.0, -2e-6, -4e-6, -8e-6, -1.2e-5, -1.6e-5, -1.932e-5},
          const materials::MaterialCatalog& catalog = materials::MaterialCatalog::builtin());

}  // namespace casimir::figures
