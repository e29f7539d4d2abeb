#include "virtlab/waves.hpp"

#include <cmath>
#include <string>

#include "virtlab/error.hpp"

namespace virtlab::waves {

Complex reflection_coefficient(double z0, Complex zl) {
  if (!(z0 > 0.0)) throw Error(ErrorCode::invalid_argument, "characteristic impedance must be positive");
  const Complex den = zl + z0;
  if (std::abs(den) == 0.0) throw Error(ErrorCode::singular_load, "singular load: zl = -z0");
  return (zl - z0) / den;
}

WaveComponents wave_components(Complex gamma, double z, double tau) {
  const double mag = std::abs(gamma);
  const double psi = mag > 0.0 ? std::arg(gamma) : 0.0;
  const double kz = kWavenumber * z;
  WaveComponents w;
  w.i = std::cos(tau + kz);
  w.r = mag * std::cos(tau - kz + psi);
  w.t = (1.0 - mag) * std::cos(tau + kz);
  w.s = 2.0 * mag * std::cos(kz - psi / 2.0) * std::cos(tau + psi / 2.0);
  w.p = w.i + w.r;
  return w;
}

WaveComponents wave_components(const TerminatedWire& wire, double z, double tau) {
  if (!(wire.length > 0.0)) throw Error(ErrorCode::invalid_argument, "wire length must be positive");
  if (!(z >= 0.0 && z <= wire.length)) {
    throw Error(ErrorCode::invalid_argument, "position z outside [0, length]");
  }
  return wave_components(reflection_coefficient(wire.z0, wire.zl), z, tau);
}

double standing_current_profile(double length, double zeta) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "dipole length must be positive");
  const double half = length / 2.0;
  if (std::abs(zeta) > half * (1.0 + 1e-12)) {
    throw Error(ErrorCode::invalid_argument, "zeta outside the dipole");
  }
  return std::sin(kWavenumber * std::max(half - std::abs(zeta), 0.0));
}

namespace {

void check_counts(int n_points, int n_frames) {
  if (n_points < 2) throw Error(ErrorCode::invalid_argument, "need at least 2 points");
  if (n_frames < 1) throw Error(ErrorCode::invalid_argument, "need at least 1 frame");
}

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace

WaveFrameSet wave_frames(const TerminatedWire& wire, int n_points, int n_frames) {
  check_counts(n_points, n_frames);
  const Complex gamma = reflection_coefficient(wire.z0, wire.zl);
  WaveFrameSet set{n_frames, n_points, uniform(0.0, wire.length, n_points), {}};
  for (int k = 0; k < n_frames; ++k) {
    const double tau = frame_phase(k, n_frames);
    auto& frame = set.frames.emplace_back();
    for (double z : set.positions) frame.push_back(wave_components(gamma, z, tau));
  }
  return set;
}

PhasorFrameSet rotating_phasor_frames(double length, int n_points, int n_frames) {
  check_counts(n_points, n_frames);
  PhasorFrameSet set{n_frames, n_points, uniform(-length / 2.0, length / 2.0, n_points), {}};
  std::vector<double> current;
  for (double zeta : set.positions) current.push_back(standing_current_profile(length, zeta));
  for (int k = 0; k < n_frames; ++k) {
    const double tau = frame_phase(k, n_frames);
    const Vec3 dir{std::cos(tau), std::sin(tau), 0.0};
    auto& frame = set.frames.emplace_back();
    for (double amp : current) frame.push_back(dir * amp);
  }
  return set;
}

}  // namespace virtlab::waves
