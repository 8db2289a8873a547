#include "casimir/lorentzian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "casimir/error.hpp"

namespace casimir::experiment {

double LorentzianFit::operator()(double omega) const {
  const double d = center * center - omega * omega;
  return amplitude / (d * d + gamma * gamma * omega * omega) + offset;
}

namespace {

constexpr int kMaxIterations = 1000;

// Model in scaled units (u = w / w_peak, y / y_max); p = (c, g, a, o).
double model(const Eigen::Vector4d& p, double u) {
  const double d = p(0) * p(0) - u * u;
  return p(2) / (d * d + p(1) * p(1) * u * u) + p(3);
}

Eigen::RowVector4d gradient(const Eigen::Vector4d& p, double u) {
  const double d = p(0) * p(0) - u * u;
  const double den = d * d + p(1) * p(1) * u * u;
  const double s = -p(2) / (den * den);
  return {s * 4.0 * d * p(0), s * 2.0 * p(1) * u * u, 1.0 / den, 1.0};
}

// Half-maximum crossing on one side of the peak, by linear interpolation.
double half_width(const std::vector<double>& u, const std::vector<double>& y, std::size_t peak, double half, int dir) {
  for (std::size_t i = peak; dir > 0 ? i + 1 < u.size() : i > 0;) {
    const std::size_t j = dir > 0 ? i + 1 : i - 1;
    if (y[j] <= half) {
      const double f = (y[i] - half) / (y[i] - y[j]);
      return std::abs(u[i] + f * (u[j] - u[i]) - u[peak]);
    }
    i = j;
  }
  return 0.0;
}

}  // namespace

LorentzianFit lorentzian_fit(std::span<const double> omega, std::span<const double> amplitude,
                             FitWeighting weighting) {
  const std::size_t n = omega.size();
  if (n != amplitude.size()) throw FitFailure("frequency and amplitude lists differ in length");
  if (n < 8) {
    std::ostringstream os;
    os << "Lorentzian fit needs >= 8 points, got " << n;
    throw FitFailure(os.str());
  }

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });
  std::vector<double> w(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = omega[idx[i]];
    y[i] = amplitude[idx[i]] * amplitude[idx[i]];
    if (!(w[i] > 0.0) || !std::isfinite(y[i])) throw FitFailure("frequencies must be > 0 and amplitudes finite");
  }
  const std::size_t peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double w0 = w[peak];
  const double y0 = y[peak];
  if (!(y0 > 0.0)) throw FitFailure("no positive response to fit");
  std::vector<double> u(n), yn(n), wt(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = w[i] / w0;
    yn[i] = y[i] / y0;
    if (weighting == FitWeighting::Relative) {
      if (!(yn[i] > 0.0)) throw FitFailure("relative weighting needs positive amplitudes");
      wt[i] = 1.0 / yn[i];
    }
  }

  double hw = half_width(u, yn, peak, 0.5, 1) + half_width(u, yn, peak, 0.5, -1);
  if (!(hw > 0.0)) hw = 0.5 * (u.back() - u.front());
  Eigen::Vector4d p(1.0, hw, hw * hw, 0.0);

  auto cost_of = [&](const Eigen::Vector4d& q) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = wt[i] * (model(q, u[i]) - yn[i]);
      c += r * r;
    }
    return c;
  };

  double cost = cost_of(p);
  double lambda = 1e-3;
  Eigen::MatrixXd Jm(n, 4);
  Eigen::VectorXd r(n);
  bool converged = false;
  int it = 0;
  for (; it < kMaxIterations && !converged; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      Jm.row(static_cast<Eigen::Index>(i)) = wt[i] * gradient(p, u[i]);
      r(static_cast<Eigen::Index>(i)) = wt[i] * (model(p, u[i]) - yn[i]);
    }
    const Eigen::Matrix4d JtJ = Jm.transpose() * Jm;
    const Eigen::Vector4d g = Jm.transpose() * r;
    bool accepted = false;
    while (!accepted && lambda < 1e12) {
      Eigen::Matrix4d A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-30);
      const Eigen::Vector4d step = A.ldlt().solve(-g);
      const Eigen::Vector4d trial = p + step;
      const double c = cost_of(trial);
      if (std::isfinite(c) && c <= cost) {
        const double rel = (step.array().abs() / p.array().abs().max(1e-12)).maxCoeff();
        const bool stalled = cost - c <= 1e-15 * cost;
        p = trial;
        cost = c;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        converged = rel < 1e-10 || stalled;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) converged = true;  // no downhill direction left: at a minimum
  }

  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) sq += std::pow(model(p, u[i]) - yn[i], 2);
  const double rms = std::sqrt(sq / static_cast<double>(n)) * y0;
  if (!converged) {
    std::ostringstream os;
    os << "Lorentzian fit did not converge in " << kMaxIterations << " iterations (residual rms " << rms << ")";
    throw FitFailure(os.str());
  }
  const double gamma_u = std::abs(p(1));
  if (!(gamma_u > 0.0) || !(p(2) > 0.0)) {
    std::ostringstream os;
    os << "Lorentzian fit gave non-physical width " << p(1) * w0 << " rad/s (residual rms " << rms << ")";
    throw FitFailure(os.str());
  }
  if (u.back() - u.front() < 3.0 * gamma_u) {
    std::ostringstream os;
    os << "frequency span " << (u.back() - u.front()) * w0 << " rad/s is below 3 gamma = " << 3.0 * gamma_u * w0;
    throw FitFailure(os.str());
  }

  LorentzianFit fit;
  fit.center = std::abs(p(0)) * w0;
  fit.gamma = gamma_u * w0;
  fit.amplitude = p(2) * y0 * std::pow(w0, 4);
  fit.offset = p(3) * y0;
  fit.residual_rms = rms;
  fit.iterations = it;

  for (std::size_t i = 0; i < n; ++i) Jm.row(static_cast<Eigen::Index>(i)) = wt[i] * gradient(p, u[i]);
  const Eigen::Matrix4d JtJ = Jm.transpose() * Jm;
  const double dof = n > 4 ? static_cast<double>(n - 4) : 1.0;
  const Eigen::Matrix4d cov = JtJ.completeOrthogonalDecomposition().pseudoInverse() * (cost / dof);
  const Eigen::Vector4d scale(w0, w0, y0 * std::pow(w0, 4), y0);
  fit.covariance = scale.asDiagonal() * cov * scale.asDiagonal();
  return fit;
}

}  // namespace casimir::experiment
