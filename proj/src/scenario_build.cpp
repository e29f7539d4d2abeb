#include <algorithm>
#include <cmath>

#include "builders.hpp"
#include "params.hpp"
#include "virtlab/coords.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"
#include "virtlab/waves.hpp"

namespace virtlab::scenarios::detail {

namespace {

using farfield::AntennaArray;
using farfield::Complex;
using farfield::DipoleElement;
using farfield::PhasorVec;
using patterns::PlaneCut;

constexpr Color kBlack{0, 0, 0};
constexpr Color kGrey{0.6, 0.6, 0.6};
constexpr Color kOrange{1, 0.55, 0};
constexpr Color kPurple{0.55, 0.2, 0.8};
constexpr Color kCyan{0, 0.6, 0.7};
constexpr Color kMagenta{0.85, 0.1, 0.6};
constexpr Color kGold{0.9, 0.75, 0.1};
constexpr Color kSlate{0.3, 0.35, 0.45};

// ---- small helpers --------------------------------------------------------

ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round9(x);
}

ordered_json vjson(const Vec3& v) { return ordered_json::array({round9(v.x), round9(v.y), round9(v.z)}); }

ordered_json numbers(const std::vector<double>& xs) {
  ordered_json a = ordered_json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

ordered_json header(const ScenarioSpec& spec) {
  ordered_json j;
  j["id"] = spec.id;
  j["kind"] = to_string(spec.kind);
  j["frames"] = spec.n_frames;
  return j;
}

ordered_json ellipse_json(const farfield::PolarizationEllipse& e) {
  ordered_json j;
  j["axial_ratio"] = num(e.axial_ratio);
  j["handedness"] = farfield::to_string(e.handedness);
  j["classification"] = farfield::to_string(e.classification);
  j["convention"] = farfield::to_string(e.convention);
  j["major"] = vjson(e.major_axis);
  j["minor"] = vjson(e.minor_axis);
  return j;
}

double period_for(int n_frames) { return std::max(2.0, n_frames / 10.0); }

Scene base_scene(const ScenarioSpec& spec) {
  Scene s;
  s.viewpoints = spec.viewpoints;
  add_axes_triad(s, 1.0);
  return s;
}

Polyline line(std::vector<Vec3> pts, const Color& c, bool closed = false) {
  return {std::move(pts), closed, RoleColor::of(c)};
}

/// Keys at k/n for the n frames plus a closing key at 1: a copy of frame 0
/// for periodic motion, the last frame for one-way sweeps.
void add_morph(Scene& s, const std::string& id, double period, const std::vector<std::vector<Vec3>>& frames,
               bool periodic) {
  AnimationTrack t{id, TrackKind::morph, period, {}};
  const int n = static_cast<int>(frames.size());
  for (int k = 0; k < n; ++k) t.keyframes.push_back({static_cast<double>(k) / n, frames[static_cast<std::size_t>(k)]});
  t.keyframes.push_back({1.0, periodic ? frames.front() : frames.back()});
  s.add_track(std::move(t));
}

void add_spin(Scene& s, const std::string& id, double period, const Vec3& axis, int n) {
  AnimationTrack t{id, TrackKind::rotation, period, {}};
  for (int k = 0; k <= n; ++k) {
    t.keyframes.push_back({static_cast<double>(k) / n, AxisAngle{axis, kTwoPi * k / n}});
  }
  s.add_track(std::move(t));
}

void add_positions(Scene& s, const std::string& id, double period, const std::vector<Vec3>& offsets) {
  AnimationTrack t{id, TrackKind::position, period, {}};
  const int n = static_cast<int>(offsets.size());
  for (int k = 0; k < n; ++k) t.keyframes.push_back({static_cast<double>(k) / n, offsets[static_cast<std::size_t>(k)]});
  t.keyframes.push_back({1.0, offsets.back()});
  s.add_track(std::move(t));
}

std::string add_arrow(Scene& s, const Vec3& from, const Vec3& to, const Color& c, double radius = 0.015,
                      std::optional<RoleColor::Role> role = {}) {
  SceneNode n = arrow(from, to, c, radius);
  n.role = role;
  return s.add(std::move(n));
}

/// Closed ellipse traced by the field tip, centred at `center`, major
/// semi-axis scaled to `size`.
std::vector<Vec3> ellipse_points(const PhasorVec& e, const Vec3& center, double size, int count, double major) {
  std::vector<Vec3> pts;
  for (int j = 0; j < count; ++j) {
    pts.push_back(center + farfield::instantaneous_field(e, kTwoPi * j / count) * (size / major));
  }
  return pts;
}

double major_length(const PhasorVec& e) {
  const auto d = farfield::decompose(e);
  const double a = dot(d.e_c, d.e_c), b = dot(d.e_s, d.e_s), c = dot(d.e_c, d.e_s);
  return std::sqrt(0.5 * (a + b) + std::sqrt(0.25 * (a - b) * (a - b) + c * c));
}

/// Trace that has reached sample k: later points collapse onto sample k.
std::vector<Vec3> partial_trace(const std::vector<Vec3>& samples, int k) {
  std::vector<Vec3> out = samples;
  for (std::size_t j = static_cast<std::size_t>(k) + 1; j < out.size(); ++j) out[j] = samples[static_cast<std::size_t>(k)];
  return out;
}

std::vector<Vec3> cut_points(const PlaneCut& cut, const Vec3& center = {}, double scale = 1.0) {
  std::vector<Vec3> pts;
  for (std::size_t k = 0; k < cut.values.size(); ++k) {
    pts.push_back(center + patterns::plane_direction(cut.plane, cut.angles[k]) * (scale * std::sqrt(cut.values[k])));
  }
  return pts;
}

ordered_json cuts_json(const std::vector<PlaneCut>& cuts) {
  ordered_json a = ordered_json::array();
  for (const auto& c : cuts) {
    ordered_json j;
    j["plane"] = patterns::to_string(c.plane);
    j["values"] = numbers(c.values);
    a.push_back(std::move(j));
  }
  return a;
}

std::string add_wire(Scene& s, const DipoleElement& e) {
  const double half = e.kind() == farfield::DipoleKind::short_dipole ? 0.15 : e.length() / 2;
  return s.add_polyline(line({e.center() - e.axis() * half, e.center() + e.axis() * half}, kBlack));
}

Vec3 direction_deg(double theta_deg, double phi_deg) {
  return coords::scs_to_ccs({1.0, deg2rad(theta_deg), deg2rad(phi_deg)});
}

// ---- parameter readers ----------------------------------------------------

struct WavesLine {
  waves::TerminatedWire wire;
  int points;
};
WavesLine read_waves_line(const json& j) {
  const Params p(j);
  WavesLine w;
  w.wire.length = p.number("length", 0.1, 20);
  w.wire.z0 = p.number("z0", 1e-3, 1e6);
  w.wire.zl = {p.number("zl_re", 0, 1e9), p.number("zl_im", -1e9, 1e9)};
  w.points = p.integer("points", 2, 5000);
  return w;
}

struct StandingPhasor {
  double length;
  int points;
};
StandingPhasor read_standing_phasor(const json& j) {
  const Params p(j);
  return {p.number("length", 0.01, 10), p.integer("points", 2, 1000)};
}

struct VolumeParams {
  double r0, dr, theta0, dtheta, phi0, dphi;
};
VolumeParams read_volume(const json& j) {
  const Params p(j);
  VolumeParams v{p.number("r0", 0, 100),          p.number("dr", 1e-6, 100),
                 deg2rad(p.number("theta0_deg", 0, 180)), deg2rad(p.number("dtheta_deg", 1e-6, 180)),
                 deg2rad(p.number("phi0_deg", 0, 360)),   deg2rad(p.number("dphi_deg", 1e-6, 360))};
  if (v.theta0 + v.dtheta > kPi + 1e-12) bad("dtheta_deg", "takes theta beyond 180 degrees");
  return v;
}

struct TriplesParams {
  std::optional<std::vector<coords::Direction>> directions;
  double arrow_length;
};
TriplesParams read_triples(const json& j) {
  const Params p(j);
  TriplesParams t{{}, p.number("arrow_length", 1e-3, 10)};
  const auto& d = p.raw("directions");
  if (!d.is_null()) {
    if (!d.is_array() || d.empty()) bad("directions", "must be null or a non-empty array of [theta_deg, phi_deg]");
    std::vector<coords::Direction> dirs;
    for (const auto& e : d) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        bad("directions", "entries must be [theta_deg, phi_deg]");
      }
      const double th = e[0].get<double>(), ph = e[1].get<double>();
      if (!(th >= 0 && th <= 180) || !(ph >= 0 && ph <= 360)) bad("directions", "angles out of range");
      dirs.emplace_back(deg2rad(th), deg2rad(ph));
    }
    t.directions = std::move(dirs);
  }
  return t;
}

struct PointParams {
  double r, theta, phi;
};
PointParams read_point(const json& j) {
  const Params p(j);
  return {p.number("r", 1e-3, 100), deg2rad(p.number("theta_deg", 0, 180)), deg2rad(p.number("phi_deg", 0, 360))};
}

struct SweepParams {
  double r, start, end;
};
SweepParams read_sweep(const json& j) {
  const Params p(j);
  return {p.number("r", 1e-3, 100), deg2rad(p.number("theta_start_deg", 0, 180)),
          deg2rad(p.number("theta_end_deg", 0, 180))};
}

struct TriptychParams {
  double axial_ratio;
  farfield::Convention convention;
};
TriptychParams read_triptych(const json& j) {
  const Params p(j);
  return {p.number("axial_ratio", 1.0 + 1e-6, 1e6),
          convention_from_string(p.choice("convention", {"toward_observer", "toward_source"}))};
}

struct DecompParams {
  Vec3 e_c, e_s;
};
DecompParams read_decomp(const json& j) {
  const Params p(j);
  return {p.vec3("e_c"), p.vec3("e_s", false)};
}

struct TraceParams {
  double axial_ratio;
  Vec3 major, propagation;
  farfield::Handedness handedness;
  farfield::Convention convention;
};
TraceParams read_trace(const json& j) {
  const Params p(j);
  TraceParams t;
  t.axial_ratio = p.number("axial_ratio", 1.0, 1e6);
  t.major = normalized(p.vec3("major_axis"));
  t.propagation = normalized(p.vec3("propagation"));
  if (std::abs(dot(t.major, t.propagation)) > 1e-9) bad("major_axis", "must be perpendicular to propagation");
  t.handedness = p.choice("handedness", {"CW", "CCW"}) == std::string("CW") ? farfield::Handedness::CW
                                                                            : farfield::Handedness::CCW;
  t.convention = convention_from_string(p.choice("convention", {"toward_observer", "toward_source"}));
  return t;
}

struct FarfieldParams {
  AntennaArray array;
  Vec3 direction;
  double distance;
  farfield::Convention convention;
};
FarfieldParams read_farfield(const json& j) {
  const Params p(j);
  return {array_from_json(p.raw("elements")), direction_deg(p.number("theta_deg", 0, 180), p.number("phi_deg", 0, 360)),
          p.number("distance", 0.1, 100),
          convention_from_string(p.choice("convention", {"toward_observer", "toward_source"}))};
}

struct CrossedParams {
  double phase;
  std::vector<double> marks_deg;
  farfield::Convention convention;
  double radius;
};
CrossedParams read_crossed(const json& j) {
  const Params p(j);
  return {deg2rad(p.number("phase_deg", -360, 360)), p.numbers("marks_deg", 0, 0, 360),
          convention_from_string(p.choice("convention", {"toward_observer", "toward_source"})),
          p.number("radius", 0.1, 100)};
}

SphericalGrid read_grid(const Params& p, const std::string& key) {
  const auto& v = p.raw(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    bad(key, "must be [n_theta, n_phi]");
  }
  const long long a = v[0].get<long long>(), b = v[1].get<long long>();
  if (a < 3 || a > 2001 || b < 4 || b > 4000) bad(key, "must lie in [3, 2001] x [4, 4000]");
  return {static_cast<int>(a), static_cast<int>(b)};
}

struct ArrayParams {
  AntennaArray array;
  SphericalGrid grid, display;
  int cut_samples;
};
ArrayParams read_array(const json& j) {
  const Params p(j);
  const double len = p.number("length", 1e-3, 20);
  const Vec3 axis = p.vec3("axis");
  const Vec3 offset = normalized(p.vec3("spacing_axis")) * (p.number("spacing", 0, 20) / 2);
  const auto phases = p.numbers("phases_deg", 2, -360, 360);
  AntennaArray array({DipoleElement::sinusoidal(offset * -1.0, axis, len, 1.0, deg2rad(phases[0])),
                      DipoleElement::sinusoidal(offset, axis, len, 1.0, deg2rad(phases[1]))});
  return {array, read_grid(p, "grid"), read_grid(p, "display_grid"), p.integer("cut_samples", 8, 7200)};
}

struct AnechoicParams {
  AntennaArray stand_in;
  double length;
  Vec3 rotation_axis, receiver;
};
AnechoicParams read_anechoic(const json& j) {
  const Params p(j);
  const double len = p.number("stand_in_length", 1e-3, 10);
  const Vec3 axis = p.vec3("stand_in_axis");
  return {AntennaArray({DipoleElement::sinusoidal({0, 0, 0}, axis, len)}), len, normalized(p.vec3("rotation_axis")),
          normalized(p.vec3("receiver"))};
}

struct ExplorerParams {
  Vec3 axis;
  double length, l_min, l_max, opacity;
  SphericalGrid grid;
  std::vector<double> periods;
  int morph_keys;
};
ExplorerParams read_explorer(const json& j) {
  const Params p(j);
  ExplorerParams e;
  e.axis = direction_deg(p.number("theta_deg", 0, 180), p.number("phi_deg", 0, 360));
  e.length = p.number("length", 0.01, 10);
  e.l_min = p.number("length_min", 0.01, 10);
  e.l_max = p.number("length_max", 0.01, 10);
  if (e.l_max < e.l_min) bad("length_max", "must not be below length_min");
  e.grid = read_grid(p, "grid");
  e.opacity = p.number("opacity", 0, 1);
  e.periods = p.numbers("periods", 3, 1e-3, 1e4);
  e.morph_keys = p.integer("morph_keys", 2, 360);
  return e;
}

struct CharParams {
  double l_min, l_max;
  int steps;
};
CharParams read_char(const json& j) {
  const Params p(j);
  CharParams c{p.number("l_min", 1e-3, 20), p.number("l_max", 1e-3, 20), p.integer("steps", 2, 10000)};
  if (c.l_max <= c.l_min) bad("l_max", "must exceed l_min");
  return c;
}

// ---- builders -------------------------------------------------------------

BuildResult build_waves_line(const ScenarioSpec& spec) {
  const auto prm = read_waves_line(spec.params);
  const int n = spec.n_frames;
  const auto set = waves::wave_frames(prm.wire, prm.points, n);
  const Complex gamma = waves::reflection_coefficient(prm.wire.z0, prm.wire.zl);
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;

  const double amp = 0.4;
  const double lanes[3] = {0.0, 1.2, 2.4};
  const char* lane_names[3] = {"p", "i, r", "s, t"};
  for (int l = 0; l < 3; ++l) {
    s.add_polyline(line({{0, lanes[l], 0}, {prm.wire.length, lanes[l], 0}}, kGrey));
    s.add_text(lane_names[l], {-0.3, lanes[l], 0}, kBlack, 0.2);
  }
  s.add_text("load", {0, -0.3, 0}, kBlack, 0.15);

  struct Curve {
    double waves::WaveComponents::*field;
    int lane;
    Color color;
  };
  const Curve curves[5] = {{&waves::WaveComponents::p, 0, kBlack},
                           {&waves::WaveComponents::i, 1, kOrange},
                           {&waves::WaveComponents::r, 1, kPurple},
                           {&waves::WaveComponents::s, 2, kCyan},
                           {&waves::WaveComponents::t, 2, kMagenta}};
  const double period = period_for(n);
  for (const auto& c : curves) {
    std::vector<std::vector<Vec3>> frames;
    for (const auto& frame : set.frames) {
      std::vector<Vec3> pts;
      for (std::size_t i = 0; i < frame.size(); ++i) pts.push_back({set.positions[i], lanes[c.lane], amp * (frame[i].*c.field)});
      frames.push_back(std::move(pts));
    }
    const auto id = s.add_polyline(line(frames.front(), c.color));
    add_morph(s, id, period, frames, true);
  }

  auto& j = r.products = header(spec);
  j["z0"] = num(prm.wire.z0);
  j["zl"] = ordered_json::array({num(prm.wire.zl.real()), num(prm.wire.zl.imag())});
  j["gamma"] = ordered_json::array({num(gamma.real()), num(gamma.imag())});
  j["positions"] = numbers(set.positions);
  j["frames"] = ordered_json::array();
  for (int k = 0; k < n; ++k) {
    ordered_json f;
    f["tau_deg"] = num(rad2deg(waves::frame_phase(k, n)));
    for (const char* name : {"p", "i", "r", "s", "t"}) {
      std::vector<double> v;
      for (const auto& w : set.frames[static_cast<std::size_t>(k)]) {
        v.push_back(name[0] == 'p' ? w.p : name[0] == 'i' ? w.i : name[0] == 'r' ? w.r : name[0] == 's' ? w.s : w.t);
      }
      f[name] = numbers(v);
    }
    j["frames"].push_back(std::move(f));
  }
  j["n_frames"] = n;
  return r;
}

BuildResult build_standing_phasor(const ScenarioSpec& spec) {
  const auto prm = read_standing_phasor(spec.params);
  const int n = spec.n_frames;
  const auto set = waves::rotating_phasor_frames(prm.length, prm.points, n);
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  const double scale = 0.6;
  s.add_polyline(line({{0, 0, -prm.length / 2}, {0, 0, prm.length / 2}}, kBlack));
  std::vector<Vec3> envelope;
  std::vector<double> current;
  for (int i = 0; i <= 100; ++i) {
    const double z = -prm.length / 2 + prm.length * i / 100;
    envelope.push_back({scale * waves::standing_current_profile(prm.length, z), 0, z});
  }
  s.add_polyline(line(envelope, kGrey));
  const double period = period_for(n);
  for (std::size_t i = 0; i < set.positions.size(); ++i) {
    const double cur = waves::standing_current_profile(prm.length, set.positions[i]);
    current.push_back(cur);
    if (std::abs(cur) * scale < 1e-6) continue;
    const Vec3 base{0, 0, set.positions[i]};
    const auto id = add_arrow(s, base, base + set.frames[0][i] * scale, kOrange, 0.01);
    add_spin(s, id, period, {0, 0, 1}, n);
  }
  auto& j = r.products = header(spec);
  j["length"] = num(prm.length);
  j["positions"] = numbers(set.positions);
  j["current"] = numbers(current);
  j["tau_deg"] = ordered_json::array();
  for (int k = 0; k < n; ++k) j["tau_deg"].push_back(num(rad2deg(waves::frame_phase(k, n))));
  return r;
}

void add_triple_arrows(Scene& s, const coords::UnitTriple& t, const Vec3& at, double len) {
  add_arrow(s, at, at + t.e_r * len, kRed, 0.01, RoleColor::Role::R);
  add_arrow(s, at, at + t.e_theta * len, kGreen, 0.01, RoleColor::Role::G);
  add_arrow(s, at, at + t.e_phi * len, kBlue, 0.01, RoleColor::Role::B);
}

ordered_json triple_json(const coords::UnitTriple& t) {
  ordered_json j;
  j["theta_deg"] = num(rad2deg(t.direction.theta()));
  j["phi_deg"] = num(rad2deg(t.direction.phi()));
  j["defined"] = t.defined;
  j["e_r"] = vjson(t.e_r);
  j["e_theta"] = t.defined ? vjson(t.e_theta) : ordered_json(nullptr);
  j["e_phi"] = t.defined ? vjson(t.e_phi) : ordered_json(nullptr);
  return j;
}

BuildResult build_volume_element(const ScenarioSpec& spec) {
  const auto v = read_volume(spec.params);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  for (const auto& m : coords::volume_element(v.r0, v.dr, v.theta0, v.dtheta, v.phi0, v.dphi)) s.add_mesh(m, 0.55);
  const double rc = v.r0 + v.dr / 2, tc = v.theta0 + v.dtheta / 2, pc = v.phi0 + v.dphi / 2;
  const auto t = coords::unit_triple(tc, pc);
  const Vec3 at = coords::scs_to_ccs({rc, tc, pc});
  add_triple_arrows(s, t, at, 0.3);
  s.add_text("r", at + t.e_r * 0.4, kRed);
  s.add_text("theta", at + t.e_theta * 0.4, kGreen);
  s.add_text("phi", at + t.e_phi * 0.4, kBlue);

  const double r1 = v.r0 + v.dr;
  const double exact = (r1 * r1 * r1 - v.r0 * v.r0 * v.r0) / 3 * (std::cos(v.theta0) - std::cos(v.theta0 + v.dtheta)) * v.dphi;
  auto& j = r.products = header(spec);
  j["r0"] = num(v.r0);
  j["dr"] = num(v.dr);
  j["theta0_deg"] = num(rad2deg(v.theta0));
  j["dtheta_deg"] = num(rad2deg(v.dtheta));
  j["phi0_deg"] = num(rad2deg(v.phi0));
  j["dphi_deg"] = num(rad2deg(v.dphi));
  j["volume"] = num(exact);
  j["volume_first_order"] = num(rc * rc * std::sin(tc) * v.dr * v.dtheta * v.dphi);
  j["center_triple"] = triple_json(t);
  return r;
}

BuildResult build_unit_triples(const ScenarioSpec& spec) {
  const auto prm = read_triples(spec.params);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  s.add_polyline(line(coords::coordinate_curve(coords::PhiCircle{1.0, kPi / 2}, 72).points, kGrey, true));
  s.add_polyline(line(coords::coordinate_curve(coords::Meridian{1.0, 0.0}, 37).points, kGrey));
  s.add_polyline(line(coords::coordinate_curve(coords::Meridian{1.0, kPi}, 37).points, kGrey));
  s.add_polyline(line(coords::coordinate_curve(coords::Meridian{1.0, kPi / 2}, 37).points, kGrey));
  s.add_polyline(line(coords::coordinate_curve(coords::Meridian{1.0, 3 * kPi / 2}, 37).points, kGrey));
  const auto triples = coords::standard_triples(prm.directions);
  auto& j = r.products = header(spec);
  j["triples"] = ordered_json::array();
  int defined = 0;
  for (const auto& t : triples) {
    if (t.defined) {
      add_triple_arrows(s, t, t.e_r, prm.arrow_length);
      ++defined;
    } else {
      s.add_text("undefined", t.e_r * 1.15, kBlack, 0.1);
    }
    j["triples"].push_back(triple_json(t));
  }
  j["defined"] = defined;
  j["undefined"] = static_cast<int>(triples.size()) - defined;
  return r;
}

BuildResult build_scs_composite(const ScenarioSpec& spec) {
  const auto p = read_point(spec.params);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  const double reach = 1.4 * p.r;
  coords::SurfaceSpec sphere;
  sphere.param = p.r;
  s.add_mesh(coords::coordinate_surface_mesh(sphere), 0.3);
  if (std::sin(p.theta) > 1e-9) {
    coords::SurfaceSpec cone;
    cone.kind = coords::SurfaceKind::cone;
    cone.param = p.theta;
    cone.r_range = {0, reach};
    s.add_mesh(coords::coordinate_surface_mesh(cone), 0.35);
  }
  coords::SurfaceSpec plane;
  plane.kind = coords::SurfaceKind::semiplane;
  plane.param = p.phi;
  plane.r_range = {0, reach};
  s.add_mesh(coords::coordinate_surface_mesh(plane), 0.35);
  s.add_polyline(coords::coordinate_curve(coords::Ray{p.theta, p.phi, reach}, 2));
  s.add_polyline(coords::coordinate_curve(coords::Meridian{p.r, p.phi}, 73));
  if (std::sin(p.theta) > 1e-9) s.add_polyline(coords::coordinate_curve(coords::PhiCircle{p.r, p.theta}, 72));
  const auto t = coords::unit_triple(p.theta, p.phi);
  const Vec3 at = coords::scs_to_ccs({p.r, p.theta, p.phi});
  if (t.defined) add_triple_arrows(s, t, at, 0.35);
  s.add_text("P", at * 1.1 + Vec3{0, 0, 0.1}, kBlack);

  auto& j = r.products = header(spec);
  j["point_scs"] = {{"r", num(p.r)}, {"theta_deg", num(rad2deg(p.theta))}, {"phi_deg", num(rad2deg(p.phi))}};
  j["point_ccs"] = vjson(at);
  j["triple"] = triple_json(t);
  return r;
}

BuildResult build_sphere_cone_sweep(const ScenarioSpec& spec) {
  const auto p = read_sweep(spec.params);
  const int n = spec.n_frames;
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  coords::SurfaceSpec sphere;
  sphere.param = p.r;
  s.add_mesh(coords::coordinate_surface_mesh(sphere), 0.25);

  coords::SurfaceSpec cone;
  cone.kind = coords::SurfaceKind::cone;
  cone.param = kPi / 2;
  cone.r_range = {0, 1.4 * p.r};
  SurfaceMesh cone_mesh = coords::coordinate_surface_mesh(cone);

  std::vector<double> thetas, radii;
  std::vector<std::vector<Vec3>> cone_frames, circle_frames;
  for (int k = 0; k < n; ++k) {
    const double th = n == 1 ? p.start : p.start + (p.end - p.start) * k / (n - 1);
    thetas.push_back(th);
    radii.push_back(p.r * std::sin(th));
    cone_frames.push_back(coords::coordinate_surface_vertices(cone, th));
    circle_frames.push_back(coords::coordinate_curve(coords::PhiCircle{p.r, th}, 72).points);
  }
  cone_mesh.vertices = cone_frames.front();
  const double period = period_for(n);
  const auto cone_id = s.add_mesh(cone_mesh, 0.45);
  auto circle = coords::coordinate_curve(coords::PhiCircle{p.r, thetas.front()}, 72);
  const auto circle_id = s.add_polyline(circle);
  if (n > 1) {
    add_morph(s, cone_id, period, cone_frames, false);
    add_morph(s, circle_id, period, circle_frames, false);
  }

  auto& j = r.products = header(spec);
  j["r"] = num(p.r);
  std::vector<double> deg;
  for (double th : thetas) deg.push_back(rad2deg(th));
  j["theta_deg"] = numbers(deg);
  j["radius"] = numbers(radii);
  return r;
}

BuildResult build_triptych(const ScenarioSpec& spec) {
  const auto p = read_triptych(spec.params);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  const Complex j1(0, 1);
  struct Preset {
    Vec3 at;
    PhasorVec e;
    Color color;
  };
  const Preset presets[3] = {
      {{1, 0, 0}, PhasorVec::from({0, 1, 0}), kPurple},
      {{0, 1, 0}, PhasorVec::from({0, 0, 1}) + PhasorVec::from({1, 0, 0}, j1), kOrange},
      {{0, 0, 1}, PhasorVec::from({1, 0, 0}) + PhasorVec::from({0, 1, 0}, j1 / p.axial_ratio), kCyan},
  };
  auto& out = r.products = header(spec);
  out["ellipses"] = ordered_json::array();
  for (const auto& pr : presets) {
    const auto el = farfield::polarization(pr.e, pr.at, p.convention);
    const double maj = major_length(pr.e);
    s.add_polyline(line(ellipse_points(pr.e, pr.at, 0.3, 72, maj), pr.color, true));
    s.add_polyline(line({pr.at, pr.at + farfield::instantaneous_field(pr.e, 0.0) * (0.3 / maj)}, kBlack));
    std::string label = farfield::to_string(el.classification);
    if (el.handedness != farfield::Handedness::LINEAR) label += std::string(" ") + farfield::to_string(el.handedness);
    s.add_text(label, pr.at * 1.45, pr.color, 0.12);
    ordered_json e = ellipse_json(el);
    e["at"] = vjson(pr.at);
    out["ellipses"].push_back(std::move(e));
  }
  return r;
}

BuildResult build_decomposition(const ScenarioSpec& spec) {
  const auto p = read_decomp(spec.params);
  const int n = spec.n_frames;
  const PhasorVec e = PhasorVec::from(p.e_c) + PhasorVec::from(p.e_s, Complex(0, -1));
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  add_arrow(s, {0, 0, 0}, p.e_c, kOrange, 0.015);
  if (norm(p.e_s) > 0) add_arrow(s, {0, 0, 0}, p.e_s, kPurple, 0.015);
  s.add_text("E_c", p.e_c * 1.15, kOrange);
  if (norm(p.e_s) > 0) s.add_text("E_s", p.e_s * 1.15, kPurple);
  std::vector<Vec3> ring;
  for (int j = 0; j < 96; ++j) ring.push_back(farfield::instantaneous_field(e, kTwoPi * j / 96));
  s.add_polyline(line(ring, kGrey, true));

  std::vector<std::vector<Vec3>> total, cpart, spart;
  ordered_json field = ordered_json::array();
  for (int k = 0; k < n; ++k) {
    const double tau = waves::frame_phase(k, n);
    const Vec3 f = farfield::instantaneous_field(e, tau);
    total.push_back({{0, 0, 0}, f});
    cpart.push_back({{0, 0, 0}, p.e_c * std::cos(tau)});
    spart.push_back({p.e_c * std::cos(tau), f});
    field.push_back(vjson(f));
  }
  const double period = period_for(n);
  const auto a = s.add_polyline(line(total.front(), kBlack));
  const auto b = s.add_polyline(line(cpart.front(), kOrange));
  const auto c = s.add_polyline(line(spart.front(), kPurple));
  if (n > 1) {
    add_morph(s, a, period, total, true);
    add_morph(s, b, period, cpart, true);
    add_morph(s, c, period, spart, true);
  }
  auto& j = r.products = header(spec);
  j["e_c"] = vjson(p.e_c);
  j["e_s"] = vjson(p.e_s);
  j["field"] = std::move(field);
  const Vec3 prop = cross(p.e_c, p.e_s);
  if (norm(prop) > 1e-12 * norm(p.e_c) * norm(p.e_s)) {
    j["ellipse"] = ellipse_json(farfield::polarization(e, normalized(prop)));
  } else {
    j["ellipse"] = nullptr;
  }
  return r;
}

/// Field vector, growing trace and full ellipse of `e` at `center`.
void add_traced_ellipse(Scene& s, const PhasorVec& e, const Vec3& center, double size, int n, const Color& color) {
  const double maj = major_length(e);
  s.add_polyline(line(ellipse_points(e, center, size, 96, maj), kGrey, true));
  const auto samples = ellipse_points(e, center, size, n, maj);
  std::vector<std::vector<Vec3>> trace, vec;
  for (int k = 0; k < n; ++k) {
    trace.push_back(partial_trace(samples, k));
    vec.push_back({center, samples[static_cast<std::size_t>(k)]});
  }
  const double period = period_for(n);
  const auto t = s.add_polyline(line(trace.front(), color));
  const auto v = s.add_polyline(line(vec.front(), kBlack));
  if (n > 1) {
    add_morph(s, t, period, trace, false);
    add_morph(s, v, period, vec, false);
  }
}

BuildResult build_ellipse_trace(const ScenarioSpec& spec) {
  const auto p = read_trace(spec.params);
  const int n = spec.n_frames;
  const Vec3 minor = normalized(cross(p.propagation, p.major));
  PhasorVec e = PhasorVec::from(p.major) + PhasorVec::from(minor, Complex(0, 1.0 / p.axial_ratio));
  auto el = farfield::polarization(e, p.propagation, p.convention);
  if (el.handedness != p.handedness && el.handedness != farfield::Handedness::LINEAR) {
    e = PhasorVec::from(p.major) + PhasorVec::from(minor, Complex(0, -1.0 / p.axial_ratio));
    el = farfield::polarization(e, p.propagation, p.convention);
  }
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  add_arrow(s, p.propagation * -0.9, p.propagation * 0.9, kSlate, 0.012);
  add_traced_ellipse(s, e, {0, 0, 0}, 0.8, n, kMagenta);
  std::string label = farfield::to_string(el.classification);
  if (el.handedness != farfield::Handedness::LINEAR) label += std::string(" ") + farfield::to_string(el.handedness);
  s.add_text(label, p.propagation * 1.1 + p.major * 0.9, kMagenta, 0.12);

  auto& j = r.products = header(spec);
  j["propagation"] = vjson(p.propagation);
  j["ellipse"] = ellipse_json(el);
  j["trace"] = ordered_json::array();
  for (int k = 0; k < n; ++k) j["trace"].push_back(vjson(farfield::instantaneous_field(e, waves::frame_phase(k, n))));
  return r;
}

BuildResult build_farfield_ellipse(const ScenarioSpec& spec) {
  const auto p = read_farfield(spec.params);
  const int n = spec.n_frames;
  const PhasorVec e = farfield::array_farfield(p.array, p.direction);
  const auto el = farfield::polarization(e, p.direction, p.convention);
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  for (const auto& elem : p.array.elements()) add_wire(s, elem);
  const auto scs = coords::ccs_to_scs(p.direction);
  s.add_polyline(coords::coordinate_curve(coords::Ray{scs.theta(), scs.phi(), p.distance}, 2));
  add_traced_ellipse(s, e, p.direction * p.distance, 0.4, n, kMagenta);
  std::string label = farfield::to_string(el.classification);
  if (el.handedness != farfield::Handedness::LINEAR) label += std::string(" ") + farfield::to_string(el.handedness);
  s.add_text(label, p.direction * (p.distance + 0.6), kMagenta, 0.12);

  auto& j = r.products = header(spec);
  j["elements"] = ordered_json::array();
  for (const auto& elem : p.array.elements()) j["elements"].push_back(element_to_json(elem));
  j["direction"] = {{"theta_deg", num(rad2deg(scs.theta()))}, {"phi_deg", num(rad2deg(scs.phi()))}};
  j["field_re"] = vjson(e.real());
  j["field_im"] = vjson(e.imag());
  j["ellipse"] = ellipse_json(el);
  return r;
}

AntennaArray crossed_array(double phase) {
  return AntennaArray({DipoleElement::short_dipole({0, 0, 0}, {0, 0, 1}),
                       DipoleElement::short_dipole({0, 0, 0}, {0, 1, 0}, 1.0, phase)});
}

BuildResult build_crossed(const ScenarioSpec& spec) {
  const auto p = read_crossed(spec.params);
  const int n = spec.n_frames;
  const AntennaArray array = crossed_array(p.phase);
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  for (const auto& elem : array.elements()) add_wire(s, elem);
  s.add_polyline(coords::coordinate_curve(coords::PhiCircle{p.radius, kPi / 2}, 144));

  auto state = [&](double phi_deg) {
    const Vec3 d = direction_deg(90.0, phi_deg);
    const PhasorVec e = farfield::array_farfield(array, d);
    return std::make_pair(e, farfield::polarization(e, d, p.convention));
  };
  auto state_json = [&](double phi_deg) {
    ordered_json j = ellipse_json(state(phi_deg).second);
    j.erase("convention");
    ordered_json out;
    out["phi_deg"] = num(phi_deg);
    out.update(j);
    return out;
  };

  const double size = 0.35;
  std::vector<std::vector<Vec3>> frames;
  auto& j = r.products = header(spec);
  j["convention"] = farfield::to_string(p.convention);
  j["phase_deg"] = num(rad2deg(p.phase));
  j["states"] = ordered_json::array();
  for (int k = 0; k < n; ++k) {
    const double phi_deg = 360.0 * k / n;
    const auto [e, el] = state(phi_deg);
    frames.push_back(ellipse_points(e, direction_deg(90, phi_deg) * p.radius, size, 48, major_length(e)));
    j["states"].push_back(state_json(phi_deg));
  }
  const auto moving = s.add_polyline(line(frames.front(), kMagenta, true));
  if (n > 1) add_morph(s, moving, period_for(n), frames, true);

  j["marks"] = ordered_json::array();
  for (double m : p.marks_deg) {
    const auto [e, el] = state(m);
    const Vec3 at = direction_deg(90, m) * p.radius;
    s.add_polyline(line(ellipse_points(e, at, size, 48, major_length(e)), kSlate, true));
    std::string label = format_number(m) + ": " + farfield::to_string(el.classification);
    if (el.handedness != farfield::Handedness::LINEAR) label += std::string(" ") + farfield::to_string(el.handedness);
    s.add_text(label, at * 1.35, kSlate, 0.1);
    j["marks"].push_back(state_json(m));
  }
  r.cuts = patterns::main_plane_cuts(array, 360);
  j["cuts"] = cuts_json(r.cuts);
  return r;
}

BuildResult build_array(const ScenarioSpec& spec) {
  const auto p = read_array(spec.params);
  const int n = spec.n_frames;
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  r.pattern = patterns::pattern_grid(p.array, p.grid);
  r.cuts = patterns::main_plane_cuts(p.array, p.cut_samples);
  const auto peak = patterns::max_intensity(p.array);

  std::vector<std::string> spinning;
  const auto surface = patterns::pattern_surface(patterns::pattern_grid(p.array, p.display));
  spinning.push_back(s.add_mesh(surface, 0.8));
  for (const auto& elem : p.array.elements()) spinning.push_back(add_wire(s, elem));
  for (const auto& cut : r.cuts) spinning.push_back(s.add_polyline({cut_points(cut), true, cut.role_color}));
  if (n > 1) {
    for (const auto& id : spinning) add_spin(s, id, period_for(n), {0, 0, 1}, n);
  }

  auto& j = r.products = header(spec);
  j["elements"] = ordered_json::array();
  for (const auto& elem : p.array.elements()) j["elements"].push_back(element_to_json(elem));
  j["grid"] = ordered_json::array({p.grid.n_theta, p.grid.n_phi});
  j["max"] = num(*std::max_element(r.pattern->values.begin(), r.pattern->values.end()));
  const auto pk = coords::ccs_to_scs(peak.direction);
  j["peak"] = {{"theta_deg", num(rad2deg(pk.theta()))}, {"phi_deg", num(rad2deg(pk.phi()))}};
  j["directivity"] = num(patterns::directivity(p.array));
  j["cuts"] = cuts_json(r.cuts);
  return r;
}

/// Simple box-and-pyramids chamber around the origin.
SurfaceMesh chamber_walls() {
  const double x0 = -2, x1 = 2, y0 = -2, y1 = 3, z0 = -1.5, z1 = 2;
  SurfaceMesh m;
  m.vertices = {{x0, y0, z0}, {x1, y0, z0}, {x1, y1, z0}, {x0, y1, z0},
                {x0, y0, z1}, {x1, y0, z1}, {x1, y1, z1}, {x0, y1, z1}};
  m.faces = {{0, 1, 2}, {0, 2, 3}, {4, 6, 5}, {4, 7, 6}, {0, 4, 5}, {0, 5, 1},
             {1, 5, 6}, {1, 6, 2}, {2, 6, 7}, {2, 7, 3}, {3, 7, 4}, {3, 4, 0}};
  m.role_color = RoleColor::of(kGrey);
  return m;
}

SurfaceMesh absorbers() {
  SurfaceMesh m;
  m.role_color = RoleColor::of(kSlate);
  const double y = 3.0, depth = 0.45, w = 0.5;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 7; ++b) {
      const double cx = -2 + w * (a + 0.5), cz = -1.5 + w * (b + 0.5);
      const auto base = static_cast<std::uint32_t>(m.vertices.size());
      m.vertices.push_back({cx - w / 2, y, cz - w / 2});
      m.vertices.push_back({cx + w / 2, y, cz - w / 2});
      m.vertices.push_back({cx + w / 2, y, cz + w / 2});
      m.vertices.push_back({cx - w / 2, y, cz + w / 2});
      m.vertices.push_back({cx, y - depth, cz});
      for (std::uint32_t k = 0; k < 4; ++k) m.faces.push_back({base + k, base + (k + 1) % 4, base + 4});
    }
  }
  return m;
}

/// Discone placeholder: a disc above an inverted cone, centred on the origin.
SurfaceMesh discone() {
  SurfaceMesh m;
  m.role_color = RoleColor::of(kGold);
  const int seg = 24;
  const double rd = 0.22, rc = 0.3, h = 0.35;
  m.vertices.push_back({0, 0, 0.04});
  for (int k = 0; k < seg; ++k) {
    const double a = kTwoPi * k / seg;
    m.vertices.push_back({rd * std::cos(a), rd * std::sin(a), 0.04});
  }
  m.vertices.push_back({0, 0, 0});
  for (int k = 0; k < seg; ++k) {
    const double a = kTwoPi * k / seg;
    m.vertices.push_back({rc * std::cos(a), rc * std::sin(a), -h});
  }
  const auto n = static_cast<std::uint32_t>(seg);
  for (std::uint32_t k = 0; k < n; ++k) {
    m.faces.push_back({0, 1 + k, 1 + (k + 1) % n});
    m.faces.push_back({n + 1, n + 2 + (k + 1) % n, n + 2 + k});
  }
  return m;
}

BuildResult build_anechoic(const ScenarioSpec& spec) {
  const auto p = read_anechoic(spec.params);
  const int n = spec.n_frames;
  const auto sweep = patterns::measurement_sweep(p.stand_in, p.rotation_axis, p.receiver, n);
  BuildResult r{base_scene(spec), n, {}, {}, {}};
  Scene& s = r.scene;
  s.add_mesh(chamber_walls(), 0.15);
  s.add_mesh(absorbers(), 1.0);
  s.add_polyline(line({{0, 0, -0.4}, {0, 0, -1.5}}, kGrey));
  const double period = period_for(n);
  const auto antenna = s.add_mesh(discone(), 1.0);
  add_spin(s, antenna, period, p.rotation_axis, n);
  add_arrow(s, p.receiver * 2.6, p.receiver * 2.1, kSlate, 0.05);
  s.add_text("receiver", p.receiver * 2.6 + Vec3{0, 0, 0.35}, kSlate, 0.15);

  const double scale = 1.2;
  std::vector<Vec3> samples;
  for (const auto& pt : sweep.points) samples.push_back(pt * scale);
  std::vector<std::vector<Vec3>> trace;
  for (int k = 0; k < n; ++k) trace.push_back(partial_trace(samples, k));
  const auto t = s.add_polyline(line(trace.front(), kMagenta));
  add_morph(s, t, period, trace, false);

  PlaneCut cut;
  cut.plane = std::abs(p.rotation_axis.x) == 1.0   ? patterns::Plane::yoz
              : std::abs(p.rotation_axis.y) == 1.0 ? patterns::Plane::zox
                                                   : patterns::Plane::xoy;
  cut.role_color = RoleColor::of(kMagenta);
  cut.angles.assign(sweep.angles.begin(), sweep.angles.end() - 1);
  cut.values.assign(sweep.values.begin(), sweep.values.end() - 1);
  r.cuts = {cut};

  auto& j = r.products = header(spec);
  j["stand_in"] = {{"kind", "sinusoidal"}, {"length", num(p.length)}, {"axis", vjson(p.stand_in.elements()[0].axis())}};
  j["rotation_axis"] = vjson(p.rotation_axis);
  j["receiver"] = vjson(p.receiver);
  std::vector<double> deg;
  for (double a : sweep.angles) deg.push_back(rad2deg(a));
  j["angles_deg"] = numbers(deg);
  j["values"] = numbers(sweep.values);
  return r;
}

BuildResult build_explorer(const ScenarioSpec& spec) {
  const auto p = read_explorer(spec.params);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  auto dipole = [&](double len) { return AntennaArray({DipoleElement::sinusoidal({0, 0, 0}, p.axis, len)}); };
  const AntennaArray array = dipole(p.length);
  r.cuts = patterns::main_plane_cuts(array, 360);
  r.pattern = patterns::pattern_grid(array, p.grid);

  const int m = p.morph_keys;
  std::vector<std::vector<Vec3>> shapes;
  for (int k = 0; k < m; ++k) {
    const double len = p.l_min + (p.l_max - p.l_min) * 0.5 * (1 - std::cos(kTwoPi * k / m));
    shapes.push_back(patterns::pattern_surface(patterns::pattern_grid(dipole(len), p.grid)).vertices);
  }
  SurfaceMesh surface = patterns::pattern_surface(*r.pattern);
  const auto surface_id = s.add_mesh(surface, p.opacity);
  const auto wire = add_wire(s, array.elements()[0]);
  for (const auto& cut : r.cuts) s.add_polyline({cut_points(cut), true, cut.role_color});

  const Vec3 d = perpendicular(p.axis);
  const PhasorVec e = farfield::array_farfield(array, d);
  const Vec3 at = d * 1.6;
  const double peak = std::sqrt(farfield::power(e));
  std::vector<std::vector<Vec3>> field;
  for (int k = 0; k < m; ++k) field.push_back({at, at + farfield::instantaneous_field(e, kTwoPi * k / m) * (0.5 / peak)});
  const auto field_id = s.add_polyline(line(field.front(), kMagenta));

  add_morph(s, field_id, p.periods[0], field, true);
  {
    AnimationTrack t{surface_id, TrackKind::morph, p.periods[1], {}};
    for (int k = 0; k < m; ++k) t.keyframes.push_back({static_cast<double>(k) / m, shapes[static_cast<std::size_t>(k)]});
    t.keyframes.push_back({1.0, shapes.front()});
    s.add_track(std::move(t));
  }
  add_spin(s, surface_id, p.periods[2], {0, 0, 1}, 8);
  add_spin(s, wire, p.periods[2], {0, 0, 1}, 8);

  patterns::CharacteristicsOptions opts;
  auto& j = r.products = header(spec);
  const auto scs = coords::ccs_to_scs(p.axis);
  j["dipole"] = {{"theta_deg", num(rad2deg(scs.theta()))}, {"phi_deg", num(rad2deg(scs.phi()))},
                 {"length", num(p.length)}};
  j["directivity"] = num(patterns::directivity(array));
  const double sn = std::abs(std::sin(kPi * p.length));
  j["r_in"] = sn < 1e-6 ? ordered_json(nullptr) : num(patterns::input_radiation_resistance(p.length));
  j["anti_resonant"] = sn < 1e-6;
  j["theta_max_deg"] = num(patterns::first_maximum_from_axis(p.length));
  j["polarization"] = ellipse_json(farfield::polarization(e, d));
  j["periods"] = numbers(p.periods);
  j["cuts"] = cuts_json(r.cuts);
  return r;
}

std::vector<Vec3> box(const Vec3& origin, double w, double h) {
  return {origin, origin + Vec3{w, 0, 0}, origin + Vec3{w, 0, h}, origin + Vec3{0, 0, h}};
}

BuildResult build_characteristics(const ScenarioSpec& spec) {
  const auto p = read_char(spec.params);
  patterns::CharacteristicsOptions opts;
  opts.cut_samples = 72;
  const auto rows = patterns::characteristics_sweep(p.l_min, p.l_max, p.steps, opts);
  BuildResult r{base_scene(spec), spec.n_frames, {}, {}, {}};
  Scene& s = r.scene;
  const double w = 3.0, h = 2.0, gap = 3.5, r_clip = 500.0;
  const char* titles[4] = {"pattern (zox)", "directivity", "R_in (ohm)", "theta_max (deg)"};
  for (int k = 0; k < 4; ++k) {
    const Vec3 o{gap * k, 0, 0};
    s.add_polyline(line(box(o, w, h), kGrey, true));
    s.add_text(titles[k], o + Vec3{w / 2, 0, h + 0.25}, kBlack, 0.2);
  }
  const double period = period_for(spec.n_frames);

  const Vec3 centre{w / 2, 0, h / 2};
  std::vector<std::vector<Vec3>> cuts;
  for (const auto& row : rows) cuts.push_back(cut_points(row.cut, centre, 0.9));
  const auto cut_id = s.add_polyline({cuts.front(), true, RoleColor::blue()});
  add_morph(s, cut_id, period, cuts, false);

  double d_max = 0.0;
  for (const auto& row : rows) d_max = std::max(d_max, row.directivity);
  auto x_of = [&](double len) { return w * (len - p.l_min) / (p.l_max - p.l_min); };
  std::vector<std::vector<Vec3>> curves(3);
  for (const auto& row : rows) {
    const double x = x_of(row.length);
    curves[0].push_back({gap + x, 0, h * row.directivity / d_max});
    curves[1].push_back({2 * gap + x, 0, h * std::min(row.r_in.value_or(r_clip), r_clip) / r_clip});
    curves[2].push_back({3 * gap + x, 0, h * row.theta_max_deg.value_or(90.0) / 90.0});
  }
  for (const auto& c : curves) {
    s.add_polyline(line(c, kBlack));
    const auto marker = add_arrow(s, c.front() + Vec3{0, 0, 0.35}, c.front(), kRed, 0.02);
    std::vector<Vec3> offsets;
    for (const auto& pt : c) offsets.push_back(pt - c.front());
    add_positions(s, marker, period, offsets);
  }
  r.cuts = {rows.back().cut};

  auto& j = r.products = header(spec);
  j["l_min"] = num(p.l_min);
  j["l_max"] = num(p.l_max);
  j["steps"] = p.steps;
  j["rows"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json o;
    o["length"] = num(row.length);
    o["directivity"] = num(row.directivity);
    o["r_in"] = row.r_in ? num(*row.r_in) : ordered_json(nullptr);
    o["anti_resonant"] = !row.r_in.has_value();
    o["theta_max_deg"] = row.theta_max_deg ? num(*row.theta_max_deg) : ordered_json(nullptr);
    j["rows"].push_back(std::move(o));
  }
  return r;
}

}  // namespace

void check_params(ScenarioKind kind, const json& params) {
  switch (kind) {
    case ScenarioKind::waves_line: read_waves_line(params); return;
    case ScenarioKind::standing_phasor: read_standing_phasor(params); return;
    case ScenarioKind::volume_element: read_volume(params); return;
    case ScenarioKind::unit_triples: read_triples(params); return;
    case ScenarioKind::scs_composite: read_point(params); return;
    case ScenarioKind::sphere_cone_sweep: read_sweep(params); return;
    case ScenarioKind::polarization_triptych: read_triptych(params); return;
    case ScenarioKind::field_decomposition: read_decomp(params); return;
    case ScenarioKind::ellipse_trace: read_trace(params); return;
    case ScenarioKind::farfield_ellipse: read_farfield(params); return;
    case ScenarioKind::crossed_dipoles: read_crossed(params); return;
    case ScenarioKind::two_dipole_array: read_array(params); return;
    case ScenarioKind::anechoic_sweep: read_anechoic(params); return;
    case ScenarioKind::explorer_default: read_explorer(params); return;
    case ScenarioKind::characteristics: read_char(params); return;
  }
}

BuildResult build_kind(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::waves_line: return build_waves_line(spec);
    case ScenarioKind::standing_phasor: return build_standing_phasor(spec);
    case ScenarioKind::volume_element: return build_volume_element(spec);
    case ScenarioKind::unit_triples: return build_unit_triples(spec);
    case ScenarioKind::scs_composite: return build_scs_composite(spec);
    case ScenarioKind::sphere_cone_sweep: return build_sphere_cone_sweep(spec);
    case ScenarioKind::polarization_triptych: return build_triptych(spec);
    case ScenarioKind::field_decomposition: return build_decomposition(spec);
    case ScenarioKind::ellipse_trace: return build_ellipse_trace(spec);
    case ScenarioKind::farfield_ellipse: return build_farfield_ellipse(spec);
    case ScenarioKind::crossed_dipoles: return build_crossed(spec);
    case ScenarioKind::two_dipole_array: return build_array(spec);
    case ScenarioKind::anechoic_sweep: return build_anechoic(spec);
    case ScenarioKind::explorer_default: return build_explorer(spec);
    case ScenarioKind::characteristics: return build_characteristics(spec);
  }
  throw Error(ErrorCode::unknown_kind, "unknown kind");
}

}  // namespace virtlab::scenarios::detail

namespace virtlab::scenarios {

BuildResult build(const ScenarioSpec& spec) {
  if (spec.n_frames < 1) throw Error(ErrorCode::invalid_argument, "frame count must be at least 1");
  const json params = resolve_params(spec.kind, spec.params);
  ScenarioSpec resolved = spec;
  resolved.params = params;
  if (resolved.viewpoints.empty()) resolved.viewpoints = default_viewpoints(spec.kind);
  BuildResult r = detail::build_kind(resolved);
  r.scene.validate();
  return r;
}

}  // namespace virtlab::scenarios
