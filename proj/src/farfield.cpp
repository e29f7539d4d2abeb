#include "virtlab/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "virtlab/error.hpp"

namespace virtlab::farfield {
namespace {

void require_unit(const Vec3& d, const char* what) {
  if (std::abs(norm(d) - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must be a unit vector");
  }
}

}  // namespace

double power(const PhasorVec& e) { return std::norm(e.ex) + std::norm(e.ey) + std::norm(e.ez); }

Complex project(const PhasorVec& e, const Vec3& d) { return e.ex * d.x + e.ey * d.y + e.ez * d.z; }

DipoleElement::DipoleElement(Vec3 center, Vec3 axis, DipoleKind kind, double length, double amplitude,
                             double phase)
    : center_(center), axis_(normalized(axis)), kind_(kind), length_(length), amplitude_(amplitude),
      phase_(phase) {
  if (!is_finite(center) || !is_finite(axis) || norm(axis) == 0.0) {
    throw Error(ErrorCode::invalid_argument, "dipole axis must be a finite non-zero vector");
  }
  if (kind == DipoleKind::sinusoidal && !(length > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "dipole length must be positive");
  }
  if (kind == DipoleKind::short_dipole) length_ = 0.0;
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorCode::invalid_argument, "dipole amplitude must be finite and non-negative");
  }
  if (!std::isfinite(phase)) throw Error(ErrorCode::invalid_argument, "dipole phase must be finite");
}

DipoleElement DipoleElement::with_amplitude(double amplitude) const {
  return {center_, axis_, kind_, length_, amplitude, phase_};
}

DipoleElement DipoleElement::rotated(const Mat3& rotation) const {
  return {rotation * center_, rotation * axis_, kind_, length_, amplitude_, phase_};
}

AntennaArray::AntennaArray(std::vector<DipoleElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::invalid_argument, "antenna array needs at least one element");
}

AntennaArray AntennaArray::rotated(const Mat3& rotation) const {
  std::vector<DipoleElement> out;
  for (const auto& e : elements_) out.push_back(e.rotated(rotation));
  return AntennaArray(std::move(out));
}

AntennaArray AntennaArray::scaled(double factor) const {
  std::vector<DipoleElement> out;
  for (const auto& e : elements_) out.push_back(e.with_amplitude(e.amplitude() * factor));
  return AntennaArray(std::move(out));
}

double pattern_factor(DipoleKind kind, double length, double psi) {
  const double s = std::sin(psi);
  if (kind == DipoleKind::short_dipole) return s;
  if (std::abs(s) < 1e-9) return 0.0;
  const double kh = kPi * length;
  const double c = std::cos(psi);
  // cos(kh c) - cos(kh) in product form; stays accurate for very short wires.
  return 2.0 * std::sin(kh * (1.0 + c) / 2.0) * std::sin(kh * (1.0 - c) / 2.0) / s;
}

PhasorVec element_farfield(const DipoleElement& elem, const Vec3& direction) {
  require_unit(direction, "direction");
  const double cos_psi = std::clamp(dot(elem.axis(), direction), -1.0, 1.0);
  const Vec3 transverse = elem.axis() - direction * cos_psi;
  const Complex excitation =
      std::polar(elem.amplitude(), elem.phase() + kWavenumber * dot(direction, elem.center()));
  if (elem.kind() == DipoleKind::short_dipole) return PhasorVec::from(transverse, excitation);

  const double t = norm(transverse);
  if (t < 1e-9) return {};
  const double f = pattern_factor(elem.kind(), elem.length(), std::acos(cos_psi));
  return PhasorVec::from(transverse / t, excitation * f);
}

PhasorVec array_farfield(const AntennaArray& array, const Vec3& direction) {
  PhasorVec sum{};
  for (const auto& e : array.elements()) sum += element_farfield(e, direction);
  return sum;
}

FieldDecomposition decompose(const PhasorVec& e) { return {e.real(), -e.imag()}; }

Vec3 instantaneous_field(const PhasorVec& e, double tau) {
  const auto [ec, es] = decompose(e);
  return ec * std::cos(tau) + es * std::sin(tau);
}

const char* to_string(Handedness h) {
  switch (h) {
    case Handedness::CW: return "CW";
    case Handedness::CCW: return "CCW";
    case Handedness::LINEAR: return "LINEAR";
  }
  return "?";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::linear: return "linear";
    case Classification::circular: return "circular";
    case Classification::elliptical: return "elliptical";
  }
  return "?";
}

const char* to_string(Convention c) {
  return c == Convention::toward_observer ? "toward_observer" : "toward_source";
}

PolarizationEllipse polarization(const PhasorVec& e, const Vec3& propagation, Convention convention) {
  require_unit(propagation, "propagation");
  const double magnitude = std::sqrt(power(e));
  if (magnitude == 0.0) throw Error(ErrorCode::null_field, "null field: polarization undefined");
  if (std::abs(project(e, propagation)) > 1e-6 * magnitude) {
    throw Error(ErrorCode::not_transverse, "field not transverse to propagation");
  }

  const auto [ec, es] = decompose(e);
  const double tau0 = 0.5 * std::atan2(2.0 * dot(ec, es), dot(ec, ec) - dot(es, es));
  Vec3 major = ec * std::cos(tau0) + es * std::sin(tau0);
  Vec3 minor = ec * std::cos(tau0 + kPi / 2.0) + es * std::sin(tau0 + kPi / 2.0);
  if (norm(minor) > norm(major)) std::swap(major, minor);

  PolarizationEllipse out;
  out.major_axis = major;
  out.minor_axis = minor;
  out.convention = convention;
  const double a = norm(major), b = norm(minor);

  if (b <= 1e-9 * a) {
    out.axial_ratio = std::numeric_limits<double>::infinity();
    out.classification = Classification::linear;
    out.handedness = Handedness::LINEAR;
    return out;
  }
  out.axial_ratio = a / b;
  out.classification = (a - b) <= 1e-9 * a ? Classification::circular : Classification::elliptical;

  const double h = dot(propagation, cross(ec, es));
  if (std::abs(h) <= 1e-12 * norm(ec) * norm(es)) {
    out.handedness = Handedness::LINEAR;
  } else {
    const bool ccw = (h > 0.0) == (convention == Convention::toward_observer);
    out.handedness = ccw ? Handedness::CCW : Handedness::CW;
  }
  return out;
}

PolarizationMap polarization_map(const AntennaArray& array, const SphericalGrid& grid, Convention convention) {
  if (!grid.valid()) throw Error(ErrorCode::invalid_argument, "grid needs n_theta >= 2 and n_phi >= 2");
  std::vector<PhasorVec> fields(grid.size());
  double peak = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const auto idx = grid.index(i, j);
      fields[idx] = array_farfield(array, grid.direction(i, j));
      peak = std::max(peak, std::sqrt(power(fields[idx])));
    }
  }
  PolarizationMap map{grid, std::vector<std::optional<PolarizationEllipse>>(grid.size())};
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const auto idx = grid.index(i, j);
      if (std::sqrt(power(fields[idx])) <= 1e-12 * peak) continue;
      map.ellipses[idx] = polarization(fields[idx], grid.direction(i, j), convention);
    }
  }
  return map;
}

}  // namespace virtlab::farfield
