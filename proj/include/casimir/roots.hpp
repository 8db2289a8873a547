#pragma once

#include <cmath>
#include <optional>

namespace casimir::numerics {

/// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
/// Stops when the bracket is narrower than rel_tol * |midpoint|.
template <class F>
std::optional<double> bisect(F&& f, double lo, double hi, double rel_tol = 1e-12,
                             int max_iter = 400) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid)) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace casimir::numerics
