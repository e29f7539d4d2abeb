#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "virtlab/grid.hpp"
#include "virtlab/vec.hpp"

namespace virtlab::farfield {

using Complex = std::complex<double>;

/// Complex far-field vector in relative units. Time convention:
/// E(tau) = Re{E e^{j tau}}. Distance and impedance factors are dropped.
struct PhasorVec {
  Complex ex, ey, ez;

  Vec3 real() const { return {ex.real(), ey.real(), ez.real()}; }
  Vec3 imag() const { return {ex.imag(), ey.imag(), ez.imag()}; }

  PhasorVec operator+(const PhasorVec& o) const { return {ex + o.ex, ey + o.ey, ez + o.ez}; }
  PhasorVec& operator+=(const PhasorVec& o) {
    ex += o.ex;
    ey += o.ey;
    ez += o.ez;
    return *this;
  }
  PhasorVec operator*(Complex s) const { return {ex * s, ey * s, ez * s}; }
  bool operator==(const PhasorVec&) const = default;

  static PhasorVec from(const Vec3& v, Complex s = 1.0) { return {v.x * s, v.y * s, v.z * s}; }
};

/// Squared magnitude sum |ex|^2 + |ey|^2 + |ez|^2.
double power(const PhasorVec& e);
/// Complex projection E . d for a real direction d.
Complex project(const PhasorVec& e, const Vec3& d);

enum class DipoleKind { sinusoidal, short_dipole };

/// Thin centre-fed wire radiator. Positions and lengths in wavelengths,
/// phase in radians. The axis is normalized on construction.
class DipoleElement {
 public:
  DipoleElement(Vec3 center, Vec3 axis, DipoleKind kind, double length = 0.0, double amplitude = 1.0,
                double phase = 0.0);

  static DipoleElement short_dipole(Vec3 center, Vec3 axis, double amplitude = 1.0, double phase = 0.0) {
    return {center, axis, DipoleKind::short_dipole, 0.0, amplitude, phase};
  }
  static DipoleElement sinusoidal(Vec3 center, Vec3 axis, double length, double amplitude = 1.0,
                                  double phase = 0.0) {
    return {center, axis, DipoleKind::sinusoidal, length, amplitude, phase};
  }

  const Vec3& center() const { return center_; }
  const Vec3& axis() const { return axis_; }
  DipoleKind kind() const { return kind_; }
  double length() const { return length_; }
  double amplitude() const { return amplitude_; }
  double phase() const { return phase_; }

  DipoleElement with_amplitude(double amplitude) const;
  /// Element with centre and axis mapped through a rotation about the origin.
  DipoleElement rotated(const Mat3& rotation) const;

  bool operator==(const DipoleElement&) const = default;

 private:
  Vec3 center_;
  Vec3 axis_;
  DipoleKind kind_;
  double length_;
  double amplitude_;
  double phase_;
};

class AntennaArray {
 public:
  explicit AntennaArray(std::vector<DipoleElement> elements);

  const std::vector<DipoleElement>& elements() const { return elements_; }
  AntennaArray rotated(const Mat3& rotation) const;
  AntennaArray scaled(double factor) const;

  bool operator==(const AntennaArray&) const = default;

 private:
  std::vector<DipoleElement> elements_;
};

/// Element pattern factor at angle psi from the wire axis: sin(psi) for a
/// short dipole, [cos(kh cos psi) - cos kh] / sin psi with kh = pi L otherwise.
double pattern_factor(DipoleKind kind, double length, double psi);

PhasorVec element_farfield(const DipoleElement& elem, const Vec3& direction);
PhasorVec array_farfield(const AntennaArray& array, const Vec3& direction);

struct FieldDecomposition {
  Vec3 e_c;
  Vec3 e_s;
};

/// E(tau) = e_c cos tau + e_s sin tau with e_c = Re E, e_s = -Im E.
FieldDecomposition decompose(const PhasorVec& e);
Vec3 instantaneous_field(const PhasorVec& e, double tau);

enum class Handedness { CW, CCW, LINEAR };
enum class Classification { linear, circular, elliptical };
/// toward_observer: the wave approaches the viewer (IEEE-style view from
/// the receiving side); toward_source flips CW and CCW.
enum class Convention { toward_observer, toward_source };

const char* to_string(Handedness h);
const char* to_string(Classification c);
const char* to_string(Convention c);

struct PolarizationEllipse {
  Vec3 major_axis;
  Vec3 minor_axis;
  double axial_ratio = 1.0;  // +inf for linear
  Handedness handedness = Handedness::LINEAR;
  Classification classification = Classification::linear;
  Convention convention = Convention::toward_observer;
};

PolarizationEllipse polarization(const PhasorVec& e, const Vec3& propagation,
                                 Convention convention = Convention::toward_observer);

struct PolarizationMap {
  SphericalGrid grid;
  // Row-major over (theta_i, phi_j); empty where the field is null.
  std::vector<std::optional<PolarizationEllipse>> ellipses;
};

PolarizationMap polarization_map(const AntennaArray& array, const SphericalGrid& grid,
                                 Convention convention = Convention::toward_observer);

}  // namespace virtlab::farfield
