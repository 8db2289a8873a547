#include "casimir/friction.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::friction {

using constants::hbar;
using constants::k_B;
using constants::pi;
using materials::complex;
using materials::LorentzModel;

double bose_occupation(double omega, double temperature) {
  if (temperature <= 0.0) return omega < 0.0 ? -1.0 : 0.0;
  if (omega == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::expm1(hbar * omega / (k_B * temperature));
}

void SlidingConfig::validate() const {
  a.validate();
  b.validate();
  if (!(separation > 0.0)) throw DomainError("separation must be > 0");
  if (!(T1 >= 0.0) || !(T2 >= 0.0)) throw DomainError("temperatures must be >= 0");
  if (!(std::abs(velocity) <= kMaxSpeed))
    throw DomainError("|v| above 1e8 m/s is outside the non-relativistic model");
}

namespace {

// One plate: its dielectric model and temperature, with everything the
// integrand needs precomputed.
struct Plate {
  LorentzModel model;
  double kT_over_hbar = 0.0;
  double hbar_over_kT = 0.0;
  double rho_small = 0.0;     // Im R / w below w_small
  double w_small = 0.0;
  double band_lo = 0.0;       // where |R_p| > 1 can occur (Re eps < 0)
  double band_hi = 0.0;
  double resonance = 0.0;     // surface mode or characteristic frequency

  Plate(const LorentzModel& m, double T) : model(m) {
    if (T > 0.0) {
      kT_over_hbar = k_B * T / hbar;
      hbar_over_kT = 1.0 / kT_over_hbar;
    }
    const bool drude = m.form == materials::DielectricForm::Drude;
    w_small = 1e-6 * (drude ? m.gamma : m.omega_T);
    rho_small = materials::reflection_p_nearfield(m, w_small).imag() / w_small;
    if (drude) {
      band_lo = m.gamma;
      band_hi = m.omega_p;
    } else {
      band_lo = 0.95 * m.omega_T;
      band_hi = 1.05 * std::sqrt(m.omega_T * m.omega_T + m.strength());
    }
    try {
      resonance = materials::surface_resonance(m);
    } catch (const NoSurfaceMode&) {
      resonance = drude ? m.omega_p : m.omega_T;
    }
  }

  // w n(w), smooth through w = 0.
  double wn(double w) const {
    if (kT_over_hbar == 0.0) return w < 0.0 ? -w : 0.0;
    const double x = w * hbar_over_kT;
    if (x == 0.0) return kT_over_hbar;
    return w / std::expm1(x);
  }
};

// Reflection data of one plate at one signed frequency.
struct Response {
  complex rp;
  complex rs;
  double rho_p;   // Im R_p / w
  double rho_s;
  double wn;
};

Response response(const Plate& p, double w, double q, bool retarded) {
  Response r{};
  const double aw = std::abs(w);
  if (!retarded) {
    r.rp = materials::reflection_p_nearfield(p.model, aw);
    r.rho_p = aw < p.w_small ? p.rho_small : r.rp.imag() / aw;
  } else {
    const double we = std::max(aw, p.w_small);
    const complex rp = materials::reflection_retarded(p.model, we, q, materials::Polarization::P);
    const complex rs = materials::reflection_retarded(p.model, we, q, materials::Polarization::S);
    r.rp = aw < p.w_small ? materials::reflection_retarded(p.model, aw, q, materials::Polarization::P) : rp;
    r.rs = aw < p.w_small ? materials::reflection_retarded(p.model, aw, q, materials::Polarization::S) : rs;
    r.rho_p = rp.imag() / we;
    r.rho_s = rs.imag() / we;
  }
  if (w < 0.0) {
    r.rp = std::conj(r.rp);
    r.rs = std::conj(r.rs);
  }
  r.wn = p.wn(w);
  return r;
}

// Floor on the tunnelling denominator |1 - e^{-2qd} R1 R2|^2. Above the
// critical velocity the denominator has exact zeros and the bare integral
// diverges logarithmically; the floor keeps the result finite and smooth
// in (q_x, q_y, w); sub-critical values move by < 2e-4 relative.
constexpr double kTunnelFloor = 1e-5;

double tunnel_denominator(complex product, double decay) {
  return std::norm(1.0 - decay * product) + kTunnelFloor;
}

// One ordered term of the integrand, (a at w) x (b at w' = w - shift),
// with Im R_a(w) Im R_b(w') [n_b(w') - n_a(w)] rewritten through the
// smooth products w n(w).
double pair_term(const Response& ra, double w, const Response& rb, double wp, double decay, bool retarded) {
  const double occupation = w * rb.wn - ra.wn * wp;
  double sum = ra.rho_p * rb.rho_p * occupation / tunnel_denominator(ra.rp * rb.rp, decay);
  if (retarded) sum += ra.rho_s * rb.rho_s * occupation / tunnel_denominator(ra.rs * rb.rs, decay);
  return decay * sum;
}

// Initial panel width inside a reflection band, in units of gamma; the
// adaptive refinement resolves the much narrower tunnelling peaks.
constexpr double kBandPanel = 6.0;

void add_band(std::vector<double>& pts, double lo, double hi, double width, double wmax) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, wmax);
  if (!(hi > lo)) return;
  const auto n = static_cast<std::size_t>(std::clamp(std::ceil((hi - lo) / width), 1.0, 400.0));
  for (std::size_t i = 0; i <= n; ++i) pts.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
}

class Integrand {
 public:
  Integrand(const SlidingConfig& cfg, const FrictionOptions& opt)
      : cfg_(cfg), opt_(opt), p1_(cfg.a, cfg.T1), p2_(cfg.b, cfg.T2) {
    symmetric_ = cfg.a == cfg.b && cfg.T1 == cfg.T2;
    gamma_min_ = std::min(cfg.a.gamma, cfg.b.gamma);
    const double kT_max = std::max(p1_.kT_over_hbar, p2_.kT_over_hbar);
    omega_max_ = std::max(50.0 * kT_max, 10.0 * std::max(p1_.resonance, p2_.resonance));
    q_max_ = opt.q_cutoff / cfg.separation;
  }

  double q_max() const { return q_max_; }

  // Breakpoints of the inner w-integral for Doppler shift s = q_x v.
  std::vector<double> omega_breakpoints(double s) const {
    const double wmax = omega_max_ + s;
    std::vector<double> pts{0.0, wmax};
    for (const Plate* p : {&p1_, &p2_}) {
      const double width = kBandPanel * p->model.gamma;
      add_band(pts, p->band_lo, p->band_hi, width, wmax);
      add_band(pts, s + p->band_lo, s + p->band_hi, width, wmax);
      add_band(pts, s - p->band_hi, s - p->band_lo, width, wmax);
      add_band(pts, p->band_lo - s, p->band_hi - s, width, wmax);
      pts.push_back(0.25 * p->band_lo);
    }
    std::sort(pts.begin(), pts.end());
    // Merge near-duplicates, then fill wide gaps geometrically.
    std::vector<double> merged;
    merged.reserve(pts.size());
    const double tiny = 0.25 * gamma_min_;
    for (double x : pts)
      if (merged.empty() || x - merged.back() > tiny) merged.push_back(x);
    if (merged.back() < wmax) merged.push_back(wmax);
    std::vector<double> out;
    out.reserve(merged.size() + 64);
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (i > 0 && merged[i - 1] > 0.0) {
        for (double x = 8.0 * merged[i - 1]; x < 0.7 * merged[i]; x *= 8.0) out.push_back(x);
      }
      out.push_back(merged[i]);
    }
    return out;
  }

  // Inner integrand: antisymmetrised in s so the q_x < 0 half-plane is
  // folded onto q_x > 0.
  double omega_integrand(double w, double q, double s) const {
    const double decay = std::exp(-2.0 * q * cfg_.separation);
    const bool ret = cfg_.retarded;
    const Response a0 = response(p1_, w, q, ret);
    const Response b0 = symmetric_ ? a0 : response(p2_, w, q, ret);
    double total = 0.0;
    for (const double shift : {s, -s}) {
      const double wp = w - shift;
      const Response ap = response(p1_, wp, q, ret);
      const Response bp = symmetric_ ? ap : response(p2_, wp, q, ret);
      double t = pair_term(a0, w, bp, wp, decay, ret);
      t += symmetric_ ? t : pair_term(b0, w, ap, wp, decay, ret);
      total += shift == s ? t : -t;
    }
    return total;
  }

  // Near-field amplitudes do not depend on q, so for fixed (w, s) the
  // integrand is sum_t weight_t e / |1 - e product_t|^2 with e = exp(-2qd).
  struct Spectral {
    std::size_t n = 0;
    std::array<double, 4> weight{};
    std::array<complex, 4> product{};
  };

  Spectral spectral(double w, double s) const {
    Spectral sp;
    const Response a0 = response(p1_, w, 0.0, false);
    const Response b0 = symmetric_ ? a0 : response(p2_, w, 0.0, false);
    for (const double shift : {s, -s}) {
      const double sign = shift == s ? 1.0 : -1.0;
      const double wp = w - shift;
      const Response ap = response(p1_, wp, 0.0, false);
      const Response bp = symmetric_ ? ap : response(p2_, wp, 0.0, false);
      const double wab = a0.rho_p * bp.rho_p * (w * bp.wn - a0.wn * wp);
      sp.weight[sp.n] = sign * (symmetric_ ? 2.0 * wab : wab);
      sp.product[sp.n++] = a0.rp * bp.rp;
      if (!symmetric_) {
        sp.weight[sp.n] = sign * b0.rho_p * ap.rho_p * (w * ap.wn - b0.wn * wp);
        sp.product[sp.n++] = b0.rp * ap.rp;
      }
    }
    return sp;
  }

  static double evaluate(const Spectral& sp, double decay) {
    double sum = 0.0;
    for (std::size_t t = 0; t < sp.n; ++t) sum += sp.weight[t] / tunnel_denominator(sp.product[t], decay);
    return decay * sum;
  }

  const SlidingConfig& cfg() const { return cfg_; }
  const FrictionOptions& opt() const { return opt_; }
  double gamma_min() const { return gamma_min_; }

 private:
  SlidingConfig cfg_;
  FrictionOptions opt_;
  Plate p1_;
  Plate p2_;
  bool symmetric_ = false;
  double gamma_min_ = 0.0;
  double omega_max_ = 0.0;
  double q_max_ = 0.0;
};

[[noreturn]] void fail(const char* axis, const numerics::QuadratureResult& r, const std::string& where) {
  std::ostringstream os;
  os << "friction integral over " << axis << " did not converge in [" << r.worst_lo << ", " << r.worst_hi
     << "]" << where << " (error " << r.error << " on " << r.value << ")";
  throw ConvergenceFailure(os.str());
}

}  // namespace

FrictionResult friction_stress_detailed(const SlidingConfig& cfg, const FrictionOptions& opt) {
  cfg.validate();
  FrictionResult result;
  if (cfg.velocity == 0.0 && cfg.T1 == cfg.T2) return result;

  const Integrand integrand(cfg, opt);
  const double d = cfg.separation;
  const double v = cfg.velocity;
  const double qmax = integrand.q_max();

  std::vector<double> q_pts;
  for (double f : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 14.0})
    if (f / d < qmax) q_pts.push_back(f / d);
  q_pts.push_back(qmax);

  numerics::QuadratureOptions w_opt;
  w_opt.rel_tol = 0.1 * opt.rel_tol;
  w_opt.max_panels = opt.max_panels_omega;
  w_opt.min_width = integrand.gamma_min() * 1e-6;

  numerics::QuadratureOptions qy_opt;
  qy_opt.rel_tol = 0.3 * opt.rel_tol;
  qy_opt.max_panels = opt.max_panels_q;
  qy_opt.min_width = 1e-6 / d;

  numerics::QuadratureOptions qx_opt;
  qx_opt.rel_tol = opt.rel_tol;
  qx_opt.max_panels = opt.max_panels_q;
  qx_opt.min_width = 1e-6 / d;

  std::size_t evaluations = 0;
  auto over_qx = [&](double qx) {
    if (qx == 0.0) return 0.0;
    const double s = qx * v;
    const auto w_pts = integrand.omega_breakpoints(std::abs(s));
    // Bisection reuses the same w nodes for every q_y, so the spectral
    // factors are computed once per q_x.
    std::unordered_map<double, Integrand::Spectral> cache;
    auto over_qy = [&](double qy) {
      const double q = std::hypot(qx, qy);
      if (2.0 * q * d > 90.0) return 0.0;
      const double decay = std::exp(-2.0 * q * d);
      auto near = [&](double w) {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, integrand.spectral(w, s)).first;
        return Integrand::evaluate(it->second, decay);
      };
      auto full = [&](double w) { return integrand.omega_integrand(w, q, s); };
      const auto r = cfg.retarded ? numerics::integrate(full, std::span<const double>(w_pts), w_opt)
                                  : numerics::integrate(near, std::span<const double>(w_pts), w_opt);
      evaluations += r.evaluations;
      if (!r.converged) {
        std::ostringstream where;
        where << " at qx = " << qx << ", qy = " << qy;
        fail("omega", r, where.str());
      }
      return r.value;
    };
    const auto r = numerics::integrate(over_qy, std::span<const double>(q_pts), qy_opt);
    if (!r.converged) {
      std::ostringstream where;
      where << " at qx = " << qx;
      fail("qy", r, where.str());
    }
    return qx * r.value;
  };
  const auto r = numerics::integrate(over_qx, std::span<const double>(q_pts), qx_opt);
  if (!r.converged) fail("qx", r, "");

  const double pref = hbar / (2.0 * pi * pi * pi);
  result.stress = -pref * r.value;
  result.error = pref * r.error;
  result.evaluations = evaluations;
  return result;
}

double friction_stress(const SlidingConfig& cfg, const FrictionOptions& opt) {
  return friction_stress_detailed(cfg, opt).stress;
}

FrictionCurve friction_curve(const SlidingConfig& base, std::span<const double> velocities,
                             const FrictionOptions& opt, unsigned threads) {
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    if (!(velocities[i] > 0.0)) throw DomainError("velocity grid must be positive");
    if (i > 0 && !(velocities[i] > velocities[i - 1])) throw DomainError("velocity grid must be ascending");
  }
  const std::size_t n = velocities.size();
  FrictionCurve curve;
  curve.velocities.assign(velocities.begin(), velocities.end());
  curve.stress.assign(n, std::numeric_limits<double>::quiet_NaN());
  curve.valid.assign(n, false);
  curve.errors.assign(n, std::string{});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      SlidingConfig cfg = base;
      cfg.velocity = velocities[i];
      try {
        curve.stress[i] = friction_stress(cfg, opt);
        curve.valid[i] = true;
      } catch (const Error& e) {
        curve.errors[i] = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double best = -1.0, loudest = -1.0;
  std::vector<std::size_t> low;
  for (std::size_t i = 0; i < n; ++i) {
    if (!curve.valid[i]) continue;
    if (low.size() < 3) low.push_back(i);
    const double coeff = std::abs(curve.stress[i]) / velocities[i];
    if (coeff > best) {
      best = coeff;
      curve.peak_velocity = velocities[i];
    }
    if (std::abs(curve.stress[i]) > loudest) {
      loudest = std::abs(curve.stress[i]);
      curve.resonance_velocity = velocities[i];
    }
  }
  if (n > 1 && low.size() == 3) {
    double sv = 0.0, vv = 0.0;
    for (std::size_t i : low) {
      sv += velocities[i] * curve.stress[i];
      vv += velocities[i] * velocities[i];
    }
    curve.linear_coefficient = -sv / vv;
  }
  return curve;
}

std::vector<double> default_velocity_grid(double critical_velocity, std::size_t n) {
  if (!(critical_velocity > 0.0)) throw DomainError("critical velocity must be > 0");
  const double lo = critical_velocity * std::pow(10.0, -4.5);
  const double hi = std::min(critical_velocity * std::pow(10.0, 1.5), SlidingConfig::kMaxSpeed);
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = critical_velocity;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

}  // namespace casimir::friction
