#pragma once

// Shared test helpers: seeded generators and independent numerical oracles.
// Nothing here calls into the library's own quadrature or search routines.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "virtlab/vec.hpp"

namespace testing {

using virtlab::Vec3;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20110501);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vec3 random_unit() {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng()), n(rng()), n(rng())};
  return v / virtlab::norm(v);
}

inline virtlab::Mat3 random_rotation() {
  return virtlab::rotation_matrix({random_unit(), uniform(0.0, virtlab::kTwoPi)});
}

/// Composite 8-point Gauss-Legendre quadrature on `panels` equal pieces.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  static const double x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                              -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                              0.7966664774136267,  0.9602898564975363};
  static const double w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < 8; ++k) sum += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return sum * 0.5 * h;
}

/// Dipole pattern factor written directly from the textbook formula.
inline double dipole_factor(double length, double psi) {
  const double s = std::sin(psi);
  if (std::abs(s) < 1e-12) return 0.0;
  const double kh = virtlab::kPi * length;
  return (std::cos(kh * std::cos(psi)) - std::cos(kh)) / s;
}

/// Brute-force extremes of |e_c cos t + e_s sin t|: a `samples`-point sweep
/// over half a period, then a ternary search inside the winning bracket.
struct SweepExtremes {
  double max_len = 0.0;
  double min_len = 1e300;
  Vec3 max_dir;
  Vec3 min_dir;
};

inline SweepExtremes sweep_ellipse(const Vec3& ec, const Vec3& es, int samples = 3600) {
  auto at = [&](double t) { return ec * std::cos(t) + es * std::sin(t); };
  auto len = [&](double t) { return virtlab::norm(at(t)); };
  const double dt = virtlab::kPi / samples;
  double t_max = 0.0, t_min = 0.0, v_max = -1.0, v_min = 1e300;
  for (int k = 0; k < samples; ++k) {
    const double t = dt * k;
    const double v = len(t);
    if (v > v_max) v_max = v, t_max = t;
    if (v < v_min) v_min = v, t_min = t;
  }
  auto polish = [&](double t0, bool maximize) {
    double lo = t0 - dt, hi = t0 + dt;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      const bool left = maximize ? len(m1) > len(m2) : len(m1) < len(m2);
      if (left) hi = m2; else lo = m1;
    }
    return 0.5 * (lo + hi);
  };
  t_max = polish(t_max, true);
  t_min = polish(t_min, false);
  return {len(t_max), len(t_min), at(t_max), at(t_min)};
}

/// Fine brute-force scan for the first local maximum of |F| in (0, 90].
inline double first_max_scan(double length, double step_deg = 1e-4) {
  double prev2 = 0.0, prev = std::abs(dipole_factor(length, virtlab::deg2rad(step_deg)));
  for (double a = 2 * step_deg; a <= 90.0 + 1e-12; a += step_deg) {
    const double cur = std::abs(dipole_factor(length, virtlab::deg2rad(a)));
    if (prev > prev2 && prev >= cur) return a - step_deg;
    prev2 = prev;
    prev = cur;
  }
  return 90.0;
}

/// |cos(a) vs b| modulo sign for direction comparisons.
inline double parallel_error(const Vec3& a, const Vec3& b) {
  const Vec3 ua = virtlab::normalized(a), ub = virtlab::normalized(b);
  return std::min(virtlab::norm(ua - ub), virtlab::norm(ua + ub));
}

}  // namespace testing
