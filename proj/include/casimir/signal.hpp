#pragma once

// Extraction steps applied to a recorded TimeSeries: lock-in style
// demodulation, Lissajous phase, zero-crossing friction sampling and line
// fits.

#include <complex>
#include <span>
#include <vector>

#include "casimir/simulator.hpp"

namespace casimir::experiment {

/// Phasor X of x(t) ~ Re[X exp(i w t)] over samples [begin, begin + n).
/// Exact for a pure tone when n spans an integer number of periods.
std::complex<double> demodulate(std::span<const double> t, std::span<const double> x, double omega,
                                std::size_t begin, std::size_t n);

/// Demodulation window: the largest whole number of drive periods after
/// `t_from`. Returns (begin, count); throws DomainError below `min_periods`.
std::pair<std::size_t, std::size_t> period_window(const TimeSeries& ts, double t_from, std::size_t min_periods = 100);

/// arg(F_couple) - arg(-v1) at the drive frequency, in (-pi, pi]. Throws
/// ToneAmbiguity when off-tone power in F_couple is within 20 dB of the tone.
double lissajous_phase(const TimeSeries& ts, double t_from);

struct CrossingSample {
  double t = 0.0;
  double v1 = 0.0;
  double F_CF = 0.0;
};

/// At every sign change of x1 after t_from (linear interpolation), samples
/// F_CF = J x2 and v1. Throws NoCrossings when there are none or when the
/// x1 amplitude does not exceed `noise_floor`.
std::vector<CrossingSample> extract_friction_zero_crossings(const TimeSeries& ts, double J, double t_from,
                                                            double noise_floor = 0.0);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);
LineFit fit_crossings(std::span<const CrossingSample> samples);

}  // namespace casimir::experiment
