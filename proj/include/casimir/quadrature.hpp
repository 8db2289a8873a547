#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration over a partitioned
// interval. The caller supplies breakpoints, so resonant features whose
// locations are known ahead of time live on panel edges from the start.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace casimir::numerics {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_panels = 2000;
  /// Panels narrower than this are never split again; their error is
  /// accepted and reported separately as `frozen_error`.
  double min_width = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;         // estimate over panels still open to refinement
  double frozen_error = 0.0;  // estimate over panels held at min_width
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
  // Worst panel at exit; only meaningful when !converged.
  double worst_lo = 0.0;
  double worst_hi = 0.0;
};

namespace detail {

// Kronrod abscissae (positive half, descending) and weights for G7/K15.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (x[1], x[3], x[5], x[7]).
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
};

template <class F>
Panel gk15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 7> f1{}, f2{};
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double value = kronrod * half;
  double err = std::abs((kronrod - gauss) * half);
  // QUADPACK-style rescaling of the raw Gauss/Kronrod difference.
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  asc *= std::abs(half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  return {lo, hi, value, err};
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()]. Breakpoints
/// must be ascending; consecutive duplicates are skipped.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (breakpoints.size() < 2) {
    out.converged = true;
    return out;
  }

  std::size_t calls = 0;
  auto counted = [&](double x) {
    ++calls;
    return f(x);
  };

  std::vector<detail::Panel> open;
  std::vector<detail::Panel> frozen;
  open.reserve(breakpoints.size() + 64);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    open.push_back(detail::gk15(counted, a, b));
  }

  auto by_error = [](const detail::Panel& p, const detail::Panel& q) { return p.error < q.error; };
  std::make_heap(open.begin(), open.end(), by_error);

  auto totals = [&](double& value, double& err, double& ferr) {
    value = err = ferr = 0.0;
    for (const auto& p : open) {
      value += p.value;
      err += p.error;
    }
    for (const auto& p : frozen) {
      value += p.value;
      ferr += p.error;
    }
  };

  double value = 0.0, err = 0.0, ferr = 0.0;
  totals(value, err, ferr);
  // Running sums drift; recompute them exactly every so often.
  std::size_t since_recompute = 0;
  while (!open.empty()) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (err <= tol) {
      out.converged = true;
      break;
    }
    if (open.size() + frozen.size() >= opt.max_panels) break;

    std::pop_heap(open.begin(), open.end(), by_error);
    const detail::Panel worst = open.back();
    open.pop_back();

    if (worst.hi - worst.lo <= opt.min_width) {
      frozen.push_back(worst);
      err -= worst.error;
      ferr += worst.error;
      continue;
    }

    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = detail::gk15(counted, worst.lo, mid);
    const auto right = detail::gk15(counted, mid, worst.hi);
    value += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    open.push_back(left);
    std::push_heap(open.begin(), open.end(), by_error);
    open.push_back(right);
    std::push_heap(open.begin(), open.end(), by_error);

    if (++since_recompute == 64) {
      totals(value, err, ferr);
      since_recompute = 0;
    }
  }
  if (open.empty()) out.converged = true;

  // Deterministic final summation in panel order.
  std::vector<detail::Panel> all;
  all.reserve(open.size() + frozen.size());
  all.insert(all.end(), open.begin(), open.end());
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const auto& p, const auto& q) { return p.lo < q.lo; });
  out.value = 0.0;
  for (const auto& p : all) out.value += p.value;
  out.error = 0.0;
  for (const auto& p : open) out.error += p.error;
  out.frozen_error = 0.0;
  for (const auto& p : frozen) out.frozen_error += p.error;
  out.evaluations = calls;
  out.panels = all.size();
  if (!out.converged && !open.empty()) {
    const auto it = std::max_element(open.begin(), open.end(), by_error);
    out.worst_lo = it->lo;
    out.worst_hi = it->hi;
  }
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  const std::array<double, 2> bp{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(bp), opt);
}

}  // namespace casimir::numerics
