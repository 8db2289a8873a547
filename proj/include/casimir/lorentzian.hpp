#pragma once

#include <Eigen/Core>
#include <span>

namespace casimir::experiment {

/// |X(w)|^2 = amplitude / ((center^2 - w^2)^2 + gamma^2 w^2) + offset
struct LorentzianFit {
  double center = 0.0;     // rad/s
  double gamma = 0.0;      // rad/s, full width at half maximum of |X|^2
  double amplitude = 0.0;
  double offset = 0.0;
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();  // (center, gamma, amplitude, offset)
  double residual_rms = 0.0;  // in units of the input |X|^2
  int iterations = 0;

  double operator()(double omega) const;
};

/// Uniform: plain least squares, suited to additive (thermal) noise.
/// Relative: residuals divided by the data, the matching estimator when the
/// noise is a fixed fraction of the signal.
enum class FitWeighting { Uniform, Relative };

/// Levenberg-Marquardt fit of amplitude^2 against omega. Needs >= 8
/// points spanning >= 3 gamma around the peak; throws FitFailure otherwise
/// or when the iteration does not converge.
LorentzianFit lorentzian_fit(std::span<const double> omega, std::span<const double> amplitude,
                             FitWeighting weighting = FitWeighting::Uniform);

}  // namespace casimir::experiment
