#include "virtlab/patterns.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "virtlab/error.hpp"

namespace virtlab::patterns {
namespace {

using farfield::DipoleElement;
using farfield::DipoleKind;

Vec3 direction_of(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Coordinate pattern search from a seed; the step halves whenever no
// neighbour improves.
IntensityPeak refine_peak(const std::function<double(double, double)>& u, double theta, double phi,
                          double step, bool vary_phi = true) {
  double best = u(theta, phi);
  int guard = 0;
  while (step > 1e-10 && guard++ < 100000) {
    bool moved = false;
    const std::array<std::pair<double, double>, 4> moves{
        {{step, 0.0}, {-step, 0.0}, {0.0, vary_phi ? step : 0.0}, {0.0, vary_phi ? -step : 0.0}}};
    for (const auto& [dt, dp] : moves) {
      if (dt == 0.0 && dp == 0.0) continue;
      const double t = std::clamp(theta + dt, 0.0, kPi);
      const double p = phi + dp;
      const double v = u(t, p);
      if (v > best) {
        best = v;
        theta = t;
        phi = p;
        moved = true;
        break;
      }
    }
    if (!moved) step /= 2.0;
  }
  return {best, direction_of(theta, phi)};
}

double simpson_weight(int i, int n) {
  if (i == 0 || i == n) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

void check_simpson(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::invalid_argument, "Simpson rule needs an even panel count");
}

}  // namespace

double radiated_intensity(const AntennaArray& array, const Vec3& direction) {
  return farfield::power(farfield::array_farfield(array, direction));
}

double radiated_intensity(const PatternSource& source, const Vec3& direction) {
  if (const auto* array = std::get_if<AntennaArray>(&source)) return radiated_intensity(*array, direction);
  return std::get<IntensityFn>(source)(direction);
}

PatternGrid pattern_grid(const PatternSource& source, const SphericalGrid& grid) {
  if (!grid.valid()) throw Error(ErrorCode::invalid_argument, "grid needs n_theta >= 2 and n_phi >= 2");
  PatternGrid pg{grid, std::vector<double>(grid.size())};
  double peak = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const double v = radiated_intensity(source, grid.direction(i, j));
      pg.values[grid.index(i, j)] = v;
      peak = std::max(peak, v);
    }
  }
  if (!(peak > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: intensity is zero everywhere");
  for (auto& v : pg.values) v /= peak;
  return pg;
}

namespace {

template <class VertexFn>
SurfaceMesh radial_surface(const SphericalGrid& g, VertexFn&& vertex) {
  SurfaceMesh mesh;
  mesh.role_color = RoleColor::of({0.9, 0.75, 0.1});
  std::vector<std::uint32_t> row_start(static_cast<std::size_t>(g.n_theta));
  for (int i = 0; i < g.n_theta; ++i) {
    row_start[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(mesh.vertices.size());
    const bool pole = i == 0 || i == g.n_theta - 1;
    const int columns = pole ? 1 : g.n_phi;
    for (int j = 0; j < columns; ++j) mesh.vertices.push_back(vertex(i, j));
  }
  auto id = [&](int i, int j) {
    const bool pole = i == 0 || i == g.n_theta - 1;
    return row_start[static_cast<std::size_t>(i)] + static_cast<std::uint32_t>(pole ? 0 : j % g.n_phi);
  };
  for (int i = 0; i + 1 < g.n_theta; ++i) {
    for (int j = 0; j < g.n_phi; ++j) {
      const auto a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (a == d && b == c) continue;
      if (a == d) {
        mesh.faces.push_back({a, b, c});
      } else if (b == c) {
        mesh.faces.push_back({a, b, d});
      } else {
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({a, c, d});
      }
    }
  }
  return mesh;
}

}  // namespace

SurfaceMesh pattern_surface(const PatternGrid& pg, Mapping mapping) {
  const auto& g = pg.grid;
  return radial_surface(g, [&](int i, int j) {
    const double v = pg.at(i, j);
    const double radius = mapping == Mapping::field ? std::sqrt(v) : v;
    return g.direction(i, j) * radius;
  });
}

std::vector<double> pattern_vertex_values(const PatternGrid& pg) {
  std::vector<double> out;
  const auto& g = pg.grid;
  for (int i = 0; i < g.n_theta; ++i) {
    const bool pole = i == 0 || i == g.n_theta - 1;
    for (int j = 0; j < (pole ? 1 : g.n_phi); ++j) out.push_back(pg.at(i, j));
  }
  return out;
}

IntensityPeak max_intensity(const PatternSource& source, const SphericalGrid& seed) {
  if (!seed.valid()) throw Error(ErrorCode::invalid_argument, "seed grid invalid");
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < seed.n_theta; ++i) {
    for (int j = 0; j < seed.n_phi; ++j) {
      const double v = radiated_intensity(source, seed.direction(i, j));
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  if (!(best > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: intensity is zero everywhere");
  const double step = std::max(kPi / (seed.n_theta - 1), kTwoPi / seed.n_phi);
  return refine_peak([&](double t, double p) { return radiated_intensity(source, direction_of(t, p)); },
                     seed.theta(bi), seed.phi(bj), step);
}

const char* to_string(Plane p) {
  switch (p) {
    case Plane::xoy: return "xoy";
    case Plane::yoz: return "yoz";
    case Plane::zox: return "zox";
  }
  return "?";
}

Vec3 plane_direction(Plane plane, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  switch (plane) {
    case Plane::xoy: return {c, s, 0.0};
    case Plane::yoz: return {0.0, c, s};
    case Plane::zox: return {c, 0.0, s};
  }
  return {};
}

PlaneCut plane_cut(const PatternSource& source, Plane plane, int n, double peak) {
  if (n < 8) throw Error(ErrorCode::invalid_argument, "plane cut needs at least 8 samples");
  if (!(peak > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: non-positive maximum");
  PlaneCut cut;
  cut.plane = plane;
  cut.role_color = plane == Plane::xoy   ? RoleColor::red()
                   : plane == Plane::yoz ? RoleColor::green()
                                         : RoleColor::blue();
  for (int k = 0; k < n; ++k) {
    const double a = kTwoPi * k / n;
    cut.angles.push_back(a);
    cut.values.push_back(radiated_intensity(source, plane_direction(plane, a)) / peak);
  }
  return cut;
}

std::vector<PlaneCut> main_plane_cuts(const PatternSource& source, int n) {
  if (n < 8) throw Error(ErrorCode::invalid_argument, "plane cut needs at least 8 samples");
  double peak = max_intensity(source).value;
  std::vector<PlaneCut> cuts;
  for (Plane p : {Plane::xoy, Plane::yoz, Plane::zox}) cuts.push_back(plane_cut(source, p, n, 1.0));
  // The refined peak can fall a rounding error short of a cut sample that
  // happens to hit the maximum exactly.
  for (const auto& c : cuts) peak = std::max(peak, *std::max_element(c.values.begin(), c.values.end()));
  for (auto& c : cuts) {
    for (auto& v : c.values) v /= peak;
  }
  return cuts;
}

double directivity(const AntennaArray& array, QuadratureSize q) {
  check_simpson(q.n_theta);
  if (q.n_phi < 3) throw Error(ErrorCode::invalid_argument, "phi quadrature needs at least 3 points");
  const double h = kPi / q.n_theta;

  if (array.elements().size() == 1) {
    // A lone element is axisymmetric about its own wire; its offset only
    // adds phase. The periodic phi rule is exact for a constant, so the
    // phi sum reduces to 2 pi.
    const DipoleElement& e = array.elements().front();
    const double amp2 = e.amplitude() * e.amplitude();
    auto u = [&](double psi) {
      const double f = farfield::pattern_factor(e.kind(), e.length(), psi);
      return amp2 * f * f;
    };
    double integral = 0.0, best = -1.0, best_psi = 0.0;
    for (int i = 0; i <= q.n_theta; ++i) {
      const double psi = i == q.n_theta ? kPi : h * i;
      const double v = u(psi);
      integral += simpson_weight(i, q.n_theta) * v * std::sin(psi);
      if (v > best) {
        best = v;
        best_psi = psi;
      }
    }
    integral *= kTwoPi * h / 3.0;
    if (!(integral > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: zero radiated power");
    const auto peak = refine_peak([&](double t, double) { return u(t); }, best_psi, 0.0, h, false);
    return 4.0 * kPi * peak.value / integral;
  }

  const double dphi = kTwoPi / q.n_phi;
  double integral = 0.0, best = -1.0, best_t = 0.0, best_p = 0.0;
  for (int i = 0; i <= q.n_theta; ++i) {
    const double t = i == q.n_theta ? kPi : h * i;
    double row = 0.0;
    for (int j = 0; j < q.n_phi; ++j) {
      const double p = dphi * j;
      const double v = radiated_intensity(array, direction_of(t, p));
      row += v;
      if (v > best) {
        best = v;
        best_t = t;
        best_p = p;
      }
    }
    integral += simpson_weight(i, q.n_theta) * std::sin(t) * row;
  }
  integral *= (h / 3.0) * dphi;
  if (!(integral > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: zero radiated power");
  const auto peak = refine_peak([&](double t, double p) { return radiated_intensity(array, direction_of(t, p)); },
                                best_t, best_p, std::max(h, dphi));
  return 4.0 * kPi * peak.value / integral;
}

double loop_radiation_resistance(double length, int n_panels) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "dipole length must be positive");
  check_simpson(n_panels);
  const double h = kPi / n_panels;
  double sum = 0.0;
  for (int i = 0; i <= n_panels; ++i) {
    const double t = i == n_panels ? kPi : h * i;
    const double f = farfield::pattern_factor(DipoleKind::sinusoidal, length, t);
    sum += simpson_weight(i, n_panels) * f * f * std::sin(t);
  }
  const double eta = 120.0 * kPi;
  return eta / kTwoPi * sum * h / 3.0;
}

double input_radiation_resistance(double length, int n_panels) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "dipole length must be positive");
  const double s = std::sin(kPi * length);
  if (std::abs(s) < 1e-6) {
    throw Error(ErrorCode::anti_resonant, "anti-resonant length (input current node)");
  }
  return loop_radiation_resistance(length, n_panels) / (s * s);
}

double first_maximum_from_axis(double length, double scan_step_deg) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "dipole length must be positive");
  if (!(scan_step_deg > 0.0 && scan_step_deg <= 0.5)) {
    throw Error(ErrorCode::invalid_argument, "scan step must lie in (0, 0.5] degrees");
  }
  auto mag = [length](double deg) {
    return std::abs(farfield::pattern_factor(DipoleKind::sinusoidal, length, deg2rad(deg)));
  };
  std::vector<double> angles{0.0};
  for (int k = 1;; ++k) {
    const double a = k * scan_step_deg;
    if (a >= 90.0 - 1e-12) break;
    angles.push_back(a);
  }
  angles.push_back(90.0);

  std::vector<double> values;
  for (double a : angles) values.push_back(mag(a));
  for (std::size_t k = 1; k + 1 < angles.size(); ++k) {
    if (values[k] > values[k - 1] && values[k] >= values[k + 1]) {
      // Golden-section refinement inside the bracketing samples.
      double lo = angles[k - 1], hi = angles[k + 1];
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = mag(x1), f2 = mag(x2);
      while (hi - lo > 1e-9) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + g * (hi - lo);
          f2 = mag(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - g * (hi - lo);
          f1 = mag(x1);
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  return 90.0;
}

DipoleCharacteristics characteristics(double length, const CharacteristicsOptions& opts) {
  const AntennaArray dipole({DipoleElement::sinusoidal({0, 0, 0}, {0, 0, 1}, length)});
  DipoleCharacteristics row;
  row.length = length;
  row.theta_max_deg = first_maximum_from_axis(length, opts.scan_step_deg);
  row.directivity = directivity(dipole, opts.quadrature);
  try {
    row.r_in = input_radiation_resistance(length, opts.resistance_panels);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::anti_resonant) throw;
  }
  const double peak = max_intensity(dipole).value;
  row.cut = plane_cut(dipole, Plane::zox, opts.cut_samples, peak);
  return row;
}

std::vector<DipoleCharacteristics> characteristics_sweep(double l_min, double l_max, int steps,
                                                         const CharacteristicsOptions& opts) {
  if (!(l_min > 0.0 && l_min < l_max)) throw Error(ErrorCode::invalid_argument, "need 0 < l_min < l_max");
  if (steps < 2) throw Error(ErrorCode::invalid_argument, "sweep needs at least 2 steps");
  std::vector<DipoleCharacteristics> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double length = i == steps - 1 ? l_max : l_min + (l_max - l_min) * i / (steps - 1);
    rows.push_back(characteristics(length, opts));
  }
  return rows;
}

Polyline MeasurementSweep::trace_after(int k) const {
  if (k < 0 || k > n_steps) throw Error(ErrorCode::invalid_argument, "trace step out of range");
  Polyline line;
  line.role_color = RoleColor::of({1.0, 0.5, 0.0});
  line.points.assign(points.begin(), points.begin() + k + 1);
  return line;
}

MeasurementSweep measurement_sweep(const PatternSource& source, const Vec3& rotation_axis,
                                   const Vec3& receiver_direction, int n_steps) {
  if (n_steps < 4) throw Error(ErrorCode::invalid_argument, "measurement sweep needs at least 4 steps");
  if (norm(rotation_axis) == 0.0 || norm(receiver_direction) == 0.0) {
    throw Error(ErrorCode::invalid_argument, "rotation axis and receiver direction must be non-zero");
  }
  MeasurementSweep sweep;
  sweep.rotation_axis = normalized(rotation_axis);
  sweep.receiver_direction = normalized(receiver_direction);
  sweep.n_steps = n_steps;
  std::vector<Vec3> seen;
  for (int k = 0; k <= n_steps; ++k) {
    const double angle = k == n_steps ? kTwoPi : kTwoPi * k / n_steps;
    // Rotating the antenna by +angle is equivalent to looking at the fixed
    // pattern from the receiver direction rotated by -angle.
    const Vec3 local = rotate({sweep.rotation_axis, -angle}, sweep.receiver_direction);
    sweep.angles.push_back(angle);
    sweep.values.push_back(radiated_intensity(source, local));
    seen.push_back(local);
  }
  const double peak = *std::max_element(sweep.values.begin(), sweep.values.end());
  if (!(peak > 0.0)) throw Error(ErrorCode::degenerate_pattern, "degenerate pattern: nothing received");
  for (std::size_t k = 0; k < sweep.values.size(); ++k) {
    sweep.values[k] /= peak;
    sweep.points.push_back(seen[k] * sweep.values[k]);
  }
  return sweep;
}

}  // namespace virtlab::patterns
