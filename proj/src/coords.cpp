#include "virtlab/coords.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "virtlab/error.hpp"

namespace virtlab::coords {
namespace {

constexpr double kPoleTol = 1e-12;

Vec3 spherical(double r, double theta, double phi) {
  const double s = std::sin(theta);
  return {r * s * std::cos(phi), r * s * std::sin(phi), r * std::cos(theta)};
}

// Sample i of n uniform subdivisions of [lo, hi]; the last sample is hi exactly
// so that neighbouring patches built from the same bounds share vertices.
double sample(const Interval& iv, int i, int n) {
  if (i == n) return iv.hi;
  return iv.lo + iv.width() * static_cast<double>(i) / static_cast<double>(n);
}

bool in_phi_interval(double phi, const Interval& iv) {
  if (iv.width() >= kTwoPi) return true;
  const double lo = wrap_2pi(iv.lo);
  const double span = iv.width();
  const double d = wrap_2pi(phi - lo);
  return d <= span;
}

// Parametric (u, v) grid over one of the coordinate surfaces. A row whose
// points all coincide (pole, apex) is welded to a single vertex.
struct GridLayout {
  int nu = 1;
  int nv = 1;
  bool periodic_v = false;
  bool collapse_first = false;
  bool collapse_last = false;
};

struct SurfaceBuild {
  GridLayout layout;
  Interval u;
  Interval v;
  // Whether v is the azimuth; otherwise phi is the fixed semiplane angle.
  bool v_is_phi = true;
};

SurfaceBuild plan(const SurfaceSpec& spec) {
  auto [def_first, def_second] = default_resolution(spec.kind);
  SurfaceBuild b;
  b.layout.nu = spec.n_first > 0 ? spec.n_first : def_first;
  b.layout.nv = spec.n_second > 0 ? spec.n_second : def_second;
  switch (spec.kind) {
    case SurfaceKind::sphere:
      b.u = spec.theta_range;
      b.v = spec.phi_range;
      b.layout.collapse_first = std::sin(b.u.lo) < kPoleTol;
      b.layout.collapse_last = std::sin(b.u.hi) < kPoleTol;
      break;
    case SurfaceKind::cone:
      b.u = spec.r_range;
      b.v = spec.phi_range;
      b.layout.collapse_first = b.u.lo == 0.0;
      break;
    case SurfaceKind::semiplane:
      b.u = spec.r_range;
      b.v = spec.theta_range;
      b.v_is_phi = false;
      b.layout.collapse_first = b.u.lo == 0.0;
      break;
  }
  b.layout.periodic_v = b.v_is_phi && b.v.width() >= kTwoPi - 1e-12;
  return b;
}

Vec3 surface_point(SurfaceKind kind, double param, double u, double v) {
  switch (kind) {
    case SurfaceKind::sphere: return spherical(param, u, v);
    case SurfaceKind::cone: return spherical(u, param, v);
    case SurfaceKind::semiplane: return spherical(u, v, param);
  }
  return {};
}

void check_spec(const SurfaceSpec& spec, const SurfaceBuild& b) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::degenerate_surface, "degenerate surface: " + why);
  };
  if (b.layout.nu < 1 || b.layout.nv < 1) fail("resolution must be positive");
  if (!(b.u.width() > 0.0) || !(b.v.width() > 0.0)) fail("parameter range collapses");
  switch (spec.kind) {
    case SurfaceKind::sphere:
      if (!(spec.param > 0.0)) fail("sphere radius must be positive");
      if (b.u.lo < 0.0 || b.u.hi > kPi) fail("theta range outside [0, pi]");
      break;
    case SurfaceKind::cone:
      if (!(spec.param > 0.0 && spec.param < kPi)) fail("cone angle must lie in (0, pi)");
      if (b.u.lo < 0.0) fail("negative radius");
      break;
    case SurfaceKind::semiplane:
      if (!std::isfinite(spec.param)) fail("semiplane angle not finite");
      if (b.u.lo < 0.0) fail("negative radius");
      if (b.v.lo < 0.0 || b.v.hi > kPi) fail("theta range outside [0, pi]");
      break;
  }
}

RoleColor role_for(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::sphere: return RoleColor::red();
    case SurfaceKind::cone: return RoleColor::green();
    case SurfaceKind::semiplane: return RoleColor::blue();
  }
  return {};
}

SurfaceMesh build_surface(const SurfaceSpec& spec, double param) {
  const SurfaceBuild b = plan(spec);
  const GridLayout& g = b.layout;
  const int columns = g.periodic_v ? g.nv : g.nv + 1;

  SurfaceMesh mesh;
  mesh.role_color = role_for(spec.kind);
  std::vector<std::vector<std::uint32_t>> index(static_cast<std::size_t>(g.nu + 1));
  for (int i = 0; i <= g.nu; ++i) {
    const double u = sample(b.u, i, g.nu);
    const bool welded = (i == 0 && g.collapse_first) || (i == g.nu && g.collapse_last);
    auto& row = index[static_cast<std::size_t>(i)];
    if (welded) {
      const auto id = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back(surface_point(spec.kind, param, u, b.v.lo));
      row.assign(static_cast<std::size_t>(columns), id);
      continue;
    }
    for (int j = 0; j < columns; ++j) {
      row.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
      mesh.vertices.push_back(surface_point(spec.kind, param, u, sample(b.v, j, g.nv)));
    }
  }

  const double phi_fixed = b.v_is_phi ? 0.0 : spec.param;
  for (int i = 0; i < g.nu; ++i) {
    const auto& r0 = index[static_cast<std::size_t>(i)];
    const auto& r1 = index[static_cast<std::size_t>(i + 1)];
    for (int j = 0; j < g.nv; ++j) {
      if (spec.cutout) {
        const double phi_mid =
            b.v_is_phi ? 0.5 * (sample(b.v, j, g.nv) + sample(b.v, j + 1, g.nv)) : phi_fixed;
        if (in_phi_interval(phi_mid, *spec.cutout)) continue;
      }
      const auto j1 = static_cast<std::size_t>((j + 1) % columns);
      const auto j0 = static_cast<std::size_t>(j);
      const std::uint32_t a = r0[j0], bb = r1[j0], c = r1[j1], d = r0[j1];
      const bool top_welded = a == d, bottom_welded = bb == c;
      if (top_welded && bottom_welded) continue;
      if (top_welded) {
        mesh.faces.push_back({a, bb, c});
      } else if (bottom_welded) {
        mesh.faces.push_back({a, bb, d});
      } else {
        mesh.faces.push_back({a, bb, c});
        mesh.faces.push_back({a, c, d});
      }
    }
  }

  // Drop vertices orphaned by the cutout.
  if (spec.cutout) {
    std::vector<std::int64_t> remap(mesh.vertices.size(), -1);
    std::vector<Vec3> kept;
    for (auto& f : mesh.faces) {
      for (auto& idx : f) {
        if (remap[idx] < 0) {
          remap[idx] = static_cast<std::int64_t>(kept.size());
          kept.push_back(mesh.vertices[idx]);
        }
        idx = static_cast<std::uint32_t>(remap[idx]);
      }
    }
    mesh.vertices = std::move(kept);
  }
  return mesh;
}

}  // namespace

SphericalPoint::SphericalPoint(double r, double theta, double phi) {
  if (!std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(phi)) {
    throw Error(ErrorCode::invalid_argument, "spherical point: non-finite coordinate");
  }
  if (r < 0.0) throw Error(ErrorCode::invalid_argument, "spherical point: negative radius");
  theta = wrap_2pi(theta);
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  r_ = r;
  theta_ = theta;
  phi_ = wrap_2pi(phi);
}

double wrap_2pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Vec3 scs_to_ccs(const SphericalPoint& p) { return spherical(p.r(), p.theta(), p.phi()); }

SphericalPoint ccs_to_scs(const Vec3& v) {
  const double rho = std::hypot(v.x, v.y);
  const double r = norm(v);
  if (r == 0.0) return {};
  const double theta = std::atan2(rho, v.z);
  const double phi = rho == 0.0 ? 0.0 : std::atan2(v.y, v.x);
  return {r, theta, phi};
}

UnitTriple unit_triple(double theta, double phi) {
  const SphericalPoint dir(1.0, theta, phi);
  const double st = std::sin(dir.theta()), ct = std::cos(dir.theta());
  const double sp = std::sin(dir.phi()), cp = std::cos(dir.phi());
  UnitTriple t;
  t.direction = dir;
  t.e_r = {st * cp, st * sp, ct};
  t.e_theta = {ct * cp, ct * sp, -st};
  t.e_phi = {-sp, cp, 0.0};
  t.defined = st >= kPoleTol;
  return t;
}

std::vector<Direction> default_triple_directions() {
  std::vector<Vec3> seen;
  std::vector<Direction> out;
  auto add = [&](const Vec3& v) {
    for (const auto& s : seen) {
      if (distance(s, v) < 1e-9) return;
    }
    seen.push_back(v);
    const auto p = ccs_to_scs(v);
    out.emplace_back(p.theta(), p.phi());
  };
  for (int k = 0; k < 8; ++k) {
    const double a = deg2rad(45.0 * k);
    add({std::cos(a), std::sin(a), 0.0});  // xoy
  }
  for (int k = 0; k < 8; ++k) {
    const double a = deg2rad(45.0 * k);
    add({std::sin(a), 0.0, std::cos(a)});  // zox
  }
  for (int k = 0; k < 8; ++k) {
    const double a = deg2rad(45.0 * k);
    add({0.0, std::sin(a), std::cos(a)});  // yoz
  }
  return out;
}

std::vector<UnitTriple> standard_triples(const std::optional<std::vector<Direction>>& directions) {
  const auto dirs = directions ? *directions : default_triple_directions();
  std::vector<UnitTriple> out;
  out.reserve(dirs.size());
  for (const auto& [theta, phi] : dirs) out.push_back(unit_triple(theta, phi));
  return out;
}

std::pair<int, int> default_resolution(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::sphere: return {18, 36};
    case SurfaceKind::cone: return {12, 36};
    case SurfaceKind::semiplane: return {12, 12};
  }
  return {12, 12};
}

SurfaceMesh coordinate_surface_mesh(const SurfaceSpec& spec) {
  check_spec(spec, plan(spec));
  SurfaceMesh mesh = build_surface(spec, spec.param);
  if (mesh.faces.empty()) throw Error(ErrorCode::degenerate_surface, "degenerate surface: no faces left");
  return mesh;
}

std::vector<Vec3> coordinate_surface_vertices(const SurfaceSpec& spec, double param) {
  return build_surface(spec, param).vertices;
}

namespace {
void require_samples(int n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "coordinate curve needs at least 2 samples");
}
}  // namespace

Polyline coordinate_curve(const PhiCircle& c, int n) {
  require_samples(n);
  Polyline line{{}, true, RoleColor::blue()};
  for (int j = 0; j < n; ++j) line.points.push_back(spherical(c.r, c.theta0, kTwoPi * j / n));
  return line;
}

Polyline coordinate_curve(const Meridian& c, int n) {
  require_samples(n);
  Polyline line{{}, false, RoleColor::green()};
  for (int i = 0; i < n; ++i) {
    const double theta = i == n - 1 ? kPi : kPi * i / (n - 1);
    line.points.push_back(spherical(c.r, theta, c.phi0));
  }
  return line;
}

Polyline coordinate_curve(const Ray& c, int n) {
  require_samples(n);
  Polyline line{{}, false, RoleColor::red()};
  for (int i = 0; i < n; ++i) {
    const double r = i == n - 1 ? c.r_max : c.r_max * i / (n - 1);
    line.points.push_back(spherical(r, c.theta, c.phi));
  }
  return line;
}

std::vector<SurfaceMesh> volume_element(double r0, double dr, double theta0, double dtheta, double phi0,
                                        double dphi, VolumeResolution res) {
  if (!(dr > 0.0 && dtheta > 0.0 && dphi > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "volume element: increments must be positive");
  }
  if (r0 < 0.0 || theta0 < 0.0 || theta0 + dtheta > kPi || dphi > kTwoPi) {
    throw Error(ErrorCode::invalid_argument, "volume element: range outside the SCS domain");
  }
  const Interval rr{r0, r0 + dr}, tt{theta0, theta0 + dtheta}, pp{phi0, phi0 + dphi};
  auto sphere = [&](double r) {
    return coordinate_surface_mesh({SurfaceKind::sphere, r, rr, tt, pp, res.n_theta, res.n_phi, {}});
  };
  auto cone = [&](double th) {
    return coordinate_surface_mesh({SurfaceKind::cone, th, rr, tt, pp, res.n_r, res.n_phi, {}});
  };
  auto semiplane = [&](double ph) {
    return coordinate_surface_mesh({SurfaceKind::semiplane, ph, rr, tt, pp, res.n_r, res.n_theta, {}});
  };

  std::vector<SurfaceMesh> out;
  if (r0 > 0.0) {
    out.push_back(sphere(r0));
  } else {
    // r0 = 0: the inner face shrinks to the origin; keep a point-sized patch
    // so the result always has six entries.
    auto m = sphere(rr.hi);
    for (auto& v : m.vertices) v = {};
    out.push_back(std::move(m));
  }
  out.push_back(sphere(rr.hi));
  out.push_back(cone(std::max(theta0, 1e-9)));
  out.push_back(cone(std::min(tt.hi, kPi - 1e-9)));
  out.push_back(semiplane(phi0));
  out.push_back(semiplane(pp.hi));
  return out;
}

Polyline sphere_cone_intersection(double r, double theta, int n) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "sphere-cone intersection: radius must be positive");
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::invalid_argument, "sphere-cone intersection: theta outside [0, pi]");
  }
  if (std::sin(theta) < kPoleTol) {
    return Polyline{{{0.0, 0.0, r * std::cos(theta)}}, false, RoleColor::blue()};
  }
  return coordinate_curve(PhiCircle{r, theta}, n);
}

}  // namespace virtlab::coords
