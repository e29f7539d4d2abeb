#pragma once

#include <complex>
#include <vector>

#include "virtlab/vec.hpp"

namespace virtlab::waves {

using Complex = std::complex<double>;

/// A uniform line of real characteristic impedance terminated in a load.
/// Positions along the wire are measured in wavelengths from the load.
struct TerminatedWire {
  double z0 = 50.0;
  Complex zl{50.0, 0.0};
  double length = 3.0;
};

/// Instantaneous normalized current (incident amplitude 1) split two ways:
/// p = i + r (incident + reflected) and p = s + t (standing + transmitted).
struct WaveComponents {
  double p = 0.0;
  double i = 0.0;
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
};

Complex reflection_coefficient(double z0, Complex zl);

/// Components at distance z (lambda) from the load and time phase tau (rad).
WaveComponents wave_components(const TerminatedWire& wire, double z, double tau);

/// Same decomposition for a given reflection coefficient, without a range
/// check on z.
WaveComponents wave_components(Complex gamma, double z, double tau);

/// Standing current I(zeta) = sin(k (L/2 - |zeta|)) on a centre-fed dipole.
double standing_current_profile(double length, double zeta);

/// Frame k of n sits at time phase 2 pi k / n.
inline double frame_phase(int k, int n_frames) { return kTwoPi * k / n_frames; }

template <class Sample>
struct FrameSet {
  int n_frames = 0;
  int n_points = 0;
  std::vector<double> positions;            // along the wire, lambda
  std::vector<std::vector<Sample>> frames;  // [frame][point]
};

using WaveFrameSet = FrameSet<WaveComponents>;
using PhasorFrameSet = FrameSet<Vec3>;

/// Current-wave components sampled on n_points positions from the load
/// (z = 0) to the far end (z = length).
WaveFrameSet wave_frames(const TerminatedWire& wire, int n_points, int n_frames);

/// Rotating phasors along a dipole on the z-axis: at each point a vector of
/// length |I(zeta)| perpendicular to the wire, turned by the frame phase about
/// z and flipped by pi where I(zeta) < 0. Its x component is I(zeta) cos(tau).
PhasorFrameSet rotating_phasor_frames(double length, int n_points, int n_frames);

}  // namespace virtlab::waves
