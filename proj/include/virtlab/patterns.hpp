#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "virtlab/farfield.hpp"
#include "virtlab/grid.hpp"
#include "virtlab/mesh.hpp"

namespace virtlab::patterns {

using farfield::AntennaArray;

/// Radiation intensity as a function of a unit direction.
using IntensityFn = std::function<double(const Vec3&)>;

/// Either a dipole array or a stand-in intensity function.
using PatternSource = std::variant<AntennaArray, IntensityFn>;

double radiated_intensity(const AntennaArray& array, const Vec3& direction);
double radiated_intensity(const PatternSource& source, const Vec3& direction);

/// Sampled intensity normalized to a maximum of exactly 1.
struct PatternGrid {
  SphericalGrid grid;
  std::vector<double> values;  // row-major (theta_i, phi_j)

  double at(int i, int j) const { return values[grid.index(i, j)]; }
};

PatternGrid pattern_grid(const PatternSource& source, const SphericalGrid& grid);

enum class Mapping { field, power };

/// Radial surface: the vertex at (theta, phi) sits at radius sqrt(value)
/// (field) or value (power). Pole rows are welded to single vertices.
SurfaceMesh pattern_surface(const PatternGrid& pg, Mapping mapping = Mapping::field);

/// Normalized pattern value carried by each vertex of pattern_surface(pg).
std::vector<double> pattern_vertex_values(const PatternGrid& pg);

struct IntensityPeak {
  double value = 0.0;
  Vec3 direction;
};

/// Global maximum: best sample on `seed` refined by a local pattern search.
IntensityPeak max_intensity(const PatternSource& source, const SphericalGrid& seed = {91, 180});

enum class Plane { xoy, yoz, zox };

const char* to_string(Plane p);

/// In-plane direction at angle a, measured from the first named axis toward
/// the second: xoy (cos a, sin a, 0), yoz (0, cos a, sin a), zox (cos a, 0, sin a).
Vec3 plane_direction(Plane plane, double angle);

struct PlaneCut {
  Plane plane = Plane::xoy;
  std::vector<double> angles;  // uniform over [0, 2pi)
  std::vector<double> values;  // normalized by the owning pattern's maximum
  RoleColor role_color;
};

/// Cuts through xoy, yoz and zox (coloured R, G, B) normalized jointly by
/// the global pattern maximum.
std::vector<PlaneCut> main_plane_cuts(const PatternSource& source, int n);

/// A single cut normalized by `peak`.
PlaneCut plane_cut(const PatternSource& source, Plane plane, int n, double peak);

struct QuadratureSize {
  int n_theta = 512;  // Simpson panels, even
  int n_phi = 512;    // periodic trapezoid points
};

/// D = 4 pi U_max / integral(U sin theta dtheta dphi).
double directivity(const AntennaArray& array, QuadratureSize q = {});

/// Radiation resistance referred to the feed current, in ohms:
/// R_m = (eta / 2 pi) integral(F^2 sin theta) with eta = 120 pi, divided by
/// sin^2(pi L). Throws anti_resonant when |sin(pi L)| < 1e-6.
double input_radiation_resistance(double length, int n_panels = 4096);

/// Radiation resistance referred to the current maximum (no feed division).
double loop_radiation_resistance(double length, int n_panels = 4096);

/// Smallest angle from the wire axis in (0, 90] degrees at which |F| has a
/// local maximum; 90 when |F| rises all the way to broadside.
double first_maximum_from_axis(double length, double scan_step_deg = 0.1);

struct DipoleCharacteristics {
  double length = 0.0;
  std::optional<double> theta_max_deg;
  double directivity = 0.0;
  std::optional<double> r_in;  // empty: anti-resonant length
  PlaneCut cut;
};

struct CharacteristicsOptions {
  QuadratureSize quadrature{};
  int resistance_panels = 4096;
  double scan_step_deg = 0.1;
  int cut_samples = 360;
};

/// Characteristics of a single z-directed sinusoidal dipole; the cut is zox.
DipoleCharacteristics characteristics(double length, const CharacteristicsOptions& opts = {});

std::vector<DipoleCharacteristics> characteristics_sweep(double l_min, double l_max, int steps = 100,
                                                         const CharacteristicsOptions& opts = {});

/// Imitation of a turntable measurement: the antenna is rotated step by step
/// about `rotation_axis` while a fixed receiver records the intensity.
struct MeasurementSweep {
  Vec3 rotation_axis;
  Vec3 receiver_direction;
  int n_steps = 0;
  std::vector<double> angles;  // n_steps + 1 rotation angles, last = 2 pi
  std::vector<double> values;  // normalized to the largest recorded value
  std::vector<Vec3> points;    // value times the receiver direction in the antenna frame

  /// Trace recorded after k steps (k + 1 points).
  Polyline trace_after(int k) const;
};

MeasurementSweep measurement_sweep(const PatternSource& source, const Vec3& rotation_axis,
                                   const Vec3& receiver_direction, int n_steps);

}  // namespace virtlab::patterns
