#include "casimir/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir::experiment {

std::complex<double> demodulate(std::span<const double> t, std::span<const double> x, double omega,
                                std::size_t begin, std::size_t n) {
  if (n == 0 || begin + n > x.size() || x.size() != t.size()) throw DomainError("demodulation window out of range");
  double re = 0.0, im = 0.0;
  for (std::size_t i = begin; i < begin + n; ++i) {
    re += x[i] * std::cos(omega * t[i]);
    im -= x[i] * std::sin(omega * t[i]);
  }
  return {2.0 * re / static_cast<double>(n), 2.0 * im / static_cast<double>(n)};
}

std::pair<std::size_t, std::size_t> period_window(const TimeSeries& ts, double t_from, std::size_t min_periods) {
  if (ts.size() < 2 || !(ts.omega_d > 0.0)) throw DomainError("time series is empty or has no drive tone");
  const auto begin = static_cast<std::size_t>(std::lower_bound(ts.t.begin(), ts.t.end(), t_from) - ts.t.begin());
  const double period = constants::two_pi / ts.omega_d;
  const double per = period / ts.dt;
  const double span = static_cast<double>(ts.size() - begin);
  const auto periods = static_cast<std::size_t>(std::floor(span / per + 1e-9));
  if (periods < min_periods) {
    std::ostringstream os;
    os << "only " << periods << " drive periods after t = " << t_from << " s (need " << min_periods << ")";
    throw DomainError(os.str());
  }
  const auto count = static_cast<std::size_t>(std::llround(static_cast<double>(periods) * per));
  return {begin, std::min(count, ts.size() - begin)};
}

double lissajous_phase(const TimeSeries& ts, double t_from) {
  const auto [begin, n] = period_window(ts, t_from);
  const double w = ts.omega_d;
  const auto F = demodulate(ts.t, ts.F_couple, w, begin, n);
  const auto V = demodulate(ts.t, ts.v1, w, begin, n);
  if (std::abs(F) == 0.0 || std::abs(V) == 0.0) throw ToneAmbiguity("no drive tone in F_couple or v1");

  double total = 0.0, residual = 0.0;
  for (std::size_t i = begin; i < begin + n; ++i) {
    const double tone = (F * std::exp(std::complex<double>(0.0, w * ts.t[i]))).real();
    total += tone * tone;
    const double r = ts.F_couple[i] - tone;
    residual += r * r;
  }
  if (residual > 0.01 * total) {
    std::ostringstream os;
    os << "off-tone power in F_couple is " << 10.0 * std::log10(residual / total) << " dB relative to the tone";
    throw ToneAmbiguity(os.str());
  }
  return std::arg(F / (-V));
}

std::vector<CrossingSample> extract_friction_zero_crossings(const TimeSeries& ts, double J, double t_from,
                                                            double noise_floor) {
  const auto begin = static_cast<std::size_t>(std::lower_bound(ts.t.begin(), ts.t.end(), t_from) - ts.t.begin());
  double amplitude = 0.0;
  for (std::size_t i = begin; i < ts.size(); ++i) amplitude = std::max(amplitude, std::abs(ts.x1[i]));
  if (!(amplitude > noise_floor)) throw NoCrossings("x1 amplitude does not exceed the noise floor");

  std::vector<CrossingSample> out;
  for (std::size_t i = std::max<std::size_t>(begin, 1); i < ts.size(); ++i) {
    const double a = ts.x1[i - 1], b = ts.x1[i];
    if (!((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0))) continue;
    const double frac = a == b ? 0.0 : a / (a - b);
    auto lerp = [&](const std::vector<double>& y) { return y[i - 1] + frac * (y[i] - y[i - 1]); };
    out.push_back({lerp(ts.t), lerp(ts.v1), J * lerp(ts.x2)});
  }
  if (out.empty()) throw NoCrossings("x1 never changes sign in the analysed window");
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("line fit needs distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  f.n = x.size();
  return f;
}

LineFit fit_crossings(std::span<const CrossingSample> samples) {
  std::vector<double> v, F;
  v.reserve(samples.size());
  F.reserve(samples.size());
  for (const auto& s : samples) {
    v.push_back(s.v1);
    F.push_back(s.F_CF);
  }
  return fit_line(v, F);
}

}  // namespace casimir::experiment
