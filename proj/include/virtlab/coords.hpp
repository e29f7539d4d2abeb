#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "virtlab/mesh.hpp"
#include "virtlab/vec.hpp"

namespace virtlab::coords {

/// Spherical coordinates (r, theta from +z, phi from +x). Angles in radians.
/// Construction canonicalizes theta into [0, pi] and phi into [0, 2pi).
class SphericalPoint {
 public:
  SphericalPoint() = default;
  SphericalPoint(double r, double theta, double phi);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Wrap an angle into [0, 2pi).
double wrap_2pi(double angle);

Vec3 scs_to_ccs(const SphericalPoint& p);
SphericalPoint ccs_to_scs(const Vec3& v);

struct UnitTriple {
  SphericalPoint direction;
  Vec3 e_r;
  Vec3 e_theta;
  Vec3 e_phi;
  // False on the z-axis, where e_theta and e_phi are not unique.
  bool defined = true;
};

UnitTriple unit_triple(double theta, double phi);

/// Direction as (theta, phi) in radians.
using Direction = std::pair<double, double>;

/// The 45-degree-step union of the three main-plane great circles: 16
/// defined triples plus the two undefined ones at +z and -z.
std::vector<Direction> default_triple_directions();

std::vector<UnitTriple> standard_triples(const std::optional<std::vector<Direction>>& directions = {});

enum class SurfaceKind { sphere, cone, semiplane };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// One SCS coordinate surface. `param` is r for a sphere, theta0 for a cone
/// and phi0 for a semiplane. Each kind sweeps two of the three ranges:
/// sphere (theta, phi), cone (r, phi), semiplane (r, theta).
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::sphere;
  double param = 1.0;
  Interval r_range{0.0, 1.0};
  Interval theta_range{0.0, kPi};
  Interval phi_range{0.0, kTwoPi};
  // Subdivisions along the first and second swept coordinate.
  int n_first = 0;
  int n_second = 0;
  std::optional<Interval> cutout;  // phi interval whose faces are removed
};

/// Default subdivision counts: spheres 18x36, cones 12x36, semiplanes 12x12.
std::pair<int, int> default_resolution(SurfaceKind kind);

SurfaceMesh coordinate_surface_mesh(const SurfaceSpec& spec);

/// Same topology as coordinate_surface_mesh(spec) but with the surface
/// parameter replaced; used for morph animations where the surface may
/// pass through degenerate shapes.
std::vector<Vec3> coordinate_surface_vertices(const SurfaceSpec& spec, double param);

struct PhiCircle {
  double r;
  double theta0;
};
struct Meridian {
  double r;
  double phi0;
};
struct Ray {
  double theta;
  double phi;
  double r_max;
};

Polyline coordinate_curve(const PhiCircle& c, int n);
Polyline coordinate_curve(const Meridian& c, int n);
Polyline coordinate_curve(const Ray& c, int n);

struct VolumeResolution {
  int n_r = 4;
  int n_theta = 6;
  int n_phi = 6;
};

/// The six coordinate-surface patches bounding
/// [r0, r0+dr] x [theta0, theta0+dtheta] x [phi0, phi0+dphi], in the order
/// inner sphere, outer sphere, lower cone, upper cone, first semiplane,
/// second semiplane.
std::vector<SurfaceMesh> volume_element(double r0, double dr, double theta0, double dtheta, double phi0,
                                        double dphi, VolumeResolution res = {});

/// Circle cut from the sphere of radius r by the cone at polar angle theta.
/// At theta = 0 or pi it collapses to a single point.
Polyline sphere_cone_intersection(double r, double theta, int n = 72);

}  // namespace virtlab::coords
