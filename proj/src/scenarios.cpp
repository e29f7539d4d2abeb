#include "virtlab/scenarios.hpp"

#include <cctype>

#include "builders.hpp"
#include "params.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"

namespace virtlab::scenarios {

using detail::bad;
using detail::Params;

namespace {

struct KindInfo {
  ScenarioKind kind;
  const char* name;
  int frames;
};

constexpr KindInfo kKinds[] = {
    {ScenarioKind::waves_line, "waves_line", 12},
    {ScenarioKind::standing_phasor, "standing_phasor", 12},
    {ScenarioKind::volume_element, "volume_element", 1},
    {ScenarioKind::unit_triples, "unit_triples", 1},
    {ScenarioKind::scs_composite, "scs_composite", 1},
    {ScenarioKind::sphere_cone_sweep, "sphere_cone_sweep", 37},
    {ScenarioKind::polarization_triptych, "polarization_triptych", 1},
    {ScenarioKind::field_decomposition, "field_decomposition", 20},
    {ScenarioKind::ellipse_trace, "ellipse_trace", 23},
    {ScenarioKind::farfield_ellipse, "farfield_ellipse", 19},
    {ScenarioKind::crossed_dipoles, "crossed_dipoles", 73},
    {ScenarioKind::two_dipole_array, "two_dipole_array", 38},
    {ScenarioKind::anechoic_sweep, "anechoic_sweep", 12},
    {ScenarioKind::explorer_default, "explorer_default", 1},
    {ScenarioKind::characteristics, "characteristics", 100},
};

const KindInfo& info(ScenarioKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw Error(ErrorCode::unknown_kind, "unknown kind");
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json short_dipole_json(const Vec3& axis, double amplitude, double phase_deg) {
  return {{"kind", "short"}, {"axis", vec_json(axis)}, {"amplitude", amplitude}, {"phase_deg", phase_deg}};
}

Viewpoint view(Vec3 p, const char* d, Vec3 at = {0, 0, 0}) { return {p, at, d}; }

json viewpoint_json(const Viewpoint& v) {
  return {{"position", vec_json(v.position)}, {"look_at", vec_json(v.look_at)}, {"description", v.description}};
}

Viewpoint viewpoint_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "viewpoint must be an object");
  for (const auto& [k, _] : j.items()) {
    if (k != "position" && k != "look_at" && k != "description") bad("viewpoints." + k, "is not a known key");
  }
  Viewpoint v;
  v.position = Params::to_vec3("viewpoints.position", j.value("position", json()), false);
  v.look_at = j.contains("look_at") ? Params::to_vec3("viewpoints.look_at", j["look_at"], false) : Vec3{};
  if (j.contains("description")) {
    if (!j["description"].is_string()) bad("viewpoints.description", "must be a string");
    v.description = j["description"].get<std::string>();
  }
  if (v.position == v.look_at) bad("viewpoints.position", "must differ from look_at");
  return v;
}

ScenarioSpec make(const char* id, const char* title, ScenarioKind kind, json overrides = json::object()) {
  ScenarioSpec s;
  s.id = id;
  s.title = title;
  s.kind = kind;
  s.params = resolve_params(kind, overrides);
  s.n_frames = default_frames(kind);
  s.viewpoints = default_viewpoints(kind);
  return s;
}

}  // namespace

const char* to_string(ScenarioKind k) { return info(k).name; }

ScenarioKind kind_from_string(const std::string& name) {
  for (const auto& i : kKinds)
    if (name == i.name) return i.kind;
  throw Error(ErrorCode::unknown_kind, "unknown kind '" + name + "'");
}

const std::vector<ScenarioKind>& all_kinds() {
  static const std::vector<ScenarioKind> kinds = [] {
    std::vector<ScenarioKind> v;
    for (const auto& i : kKinds) v.push_back(i.kind);
    return v;
  }();
  return kinds;
}

bool ScenarioSpec::operator==(const ScenarioSpec& o) const {
  if (id != o.id || title != o.title || kind != o.kind || params != o.params || n_frames != o.n_frames) return false;
  if (viewpoints.size() != o.viewpoints.size()) return false;
  for (std::size_t i = 0; i < viewpoints.size(); ++i) {
    const auto &a = viewpoints[i], &b = o.viewpoints[i];
    if (a.position != b.position || a.look_at != b.look_at || a.description != b.description) return false;
  }
  return true;
}

json default_params(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::waves_line:
      return {{"length", 3.0}, {"z0", 50.0}, {"zl_re", 100.0}, {"zl_im", 50.0}, {"points", 121}};
    case ScenarioKind::standing_phasor: return {{"length", 1.25}, {"points", 21}};
    case ScenarioKind::volume_element:
      return {{"r0", 1.0},          {"dr", 0.4},          {"theta0_deg", 40.0},
              {"dtheta_deg", 25.0}, {"phi0_deg", 20.0},   {"dphi_deg", 35.0}};
    case ScenarioKind::unit_triples: return {{"directions", nullptr}, {"arrow_length", 0.3}};
    case ScenarioKind::scs_composite: return {{"r", 1.0}, {"theta_deg", 50.0}, {"phi_deg", 40.0}};
    case ScenarioKind::sphere_cone_sweep:
      return {{"r", 1.0}, {"theta_start_deg", 0.0}, {"theta_end_deg", 180.0}};
    case ScenarioKind::polarization_triptych:
      return {{"axial_ratio", 2.0}, {"convention", "toward_observer"}};
    case ScenarioKind::field_decomposition:
      return {{"e_c", json::array({0.0, 1.0, 0.0})}, {"e_s", json::array({0.0, 0.3, 0.6})}};
    case ScenarioKind::ellipse_trace:
      return {{"axial_ratio", 2.0},
              {"major_axis", json::array({0.0, 0.0, 1.0})},
              {"propagation", json::array({0.0, 1.0, 0.0})},
              {"handedness", "CW"},
              {"convention", "toward_observer"}};
    case ScenarioKind::farfield_ellipse:
      return {{"elements", json::array({short_dipole_json({0, 0, 1}, 1.0, 0.0),
                                        short_dipole_json({0, 1, 0}, 0.5, 90.0)})},
              {"theta_deg", 90.0},
              {"phi_deg", 0.0},
              {"distance", 1.5},
              {"convention", "toward_observer"}};
    case ScenarioKind::crossed_dipoles:
      return {{"phase_deg", 90.0},
              {"marks_deg", json::array({0.0, 240.0, 270.0})},
              {"convention", "toward_source"},
              {"radius", 1.5}};
    case ScenarioKind::two_dipole_array:
      return {{"length", 2.4},
              {"axis", json::array({0.2, 0.4, 0.894})},
              {"spacing", 0.25},
              {"spacing_axis", json::array({0.3, 0.5, 0.812})},
              {"phases_deg", json::array({0.0, 30.0})},
              {"grid", json::array({181, 360})},
              {"display_grid", json::array({46, 90})},
              {"cut_samples", 360}};
    case ScenarioKind::anechoic_sweep:
      return {{"stand_in_length", 0.5},
              {"stand_in_axis", json::array({0.0, 0.0, 1.0})},
              {"rotation_axis", json::array({1.0, 0.0, 0.0})},
              {"receiver", json::array({0.0, 1.0, 0.0})}};
    case ScenarioKind::explorer_default:
      return {{"theta_deg", 90.0},
              {"phi_deg", 0.0},
              {"length", 0.5},
              {"length_min", 0.5},
              {"length_max", 1.5},
              {"grid", json::array({31, 60})},
              {"opacity", 0.7},
              {"periods", json::array({4.0, 6.0, 10.0})},
              {"morph_keys", 8}};
    case ScenarioKind::characteristics: return {{"l_min", 0.1}, {"l_max", 3.0}, {"steps", 100}};
  }
  return json::object();
}

int default_frames(ScenarioKind kind) { return info(kind).frames; }

std::vector<Viewpoint> default_viewpoints(ScenarioKind kind) {
  const Viewpoint octant = default_first_octant_viewpoint();
  switch (kind) {
    case ScenarioKind::standing_phasor:
      return {octant,
              view({4, 0, 0}, "front"),
              view({0, 4, 0}, "side"),
              view({0, 0.01, 4}, "top"),
              view({-2.5, -2, 1.5}, "back octant"),
              view({2.5, 2, -1.5}, "below")};
    case ScenarioKind::waves_line:
      return {view({1.5, -4, 2.5}, "along the wire", {1.5, 0, 0}), octant};
    case ScenarioKind::anechoic_sweep:
      return {view({3.5, -2.5, 2}, "chamber overview", {0, 1, 0}), view({0, 3.5, 0.5}, "receiver", {0, 0, 0})};
    case ScenarioKind::explorer_default:
      return {octant,
              view({4, 0, 0}, "+x"),
              view({0, 4, 0}, "+y"),
              view({0, 0.01, 4}, "+z"),
              view({-2.5, -2, 1.5}, "opposite octant"),
              view({2.5, -2, -1.5}, "from below")};
    case ScenarioKind::characteristics:
      return {view({6.75, -12, 1}, "panels", {6.75, 0, 1}), octant};
    default: return {octant};
  }
}

json resolve_params(ScenarioKind kind, const json& given) {
  if (!given.is_object()) throw Error(ErrorCode::parse_error, "params must be an object");
  json merged = default_params(kind);
  for (const auto& [key, value] : given.items()) {
    if (!merged.contains(key)) bad(key, "is not a known parameter of kind " + std::string(to_string(kind)));
    merged[key] = value;
  }
  detail::check_params(kind, merged);
  return merged;
}

const std::vector<ScenarioSpec>& catalog() {
  static const std::vector<ScenarioSpec> specs = {
      make("fig1_left", "Current waves on a 3-wavelength wire", ScenarioKind::waves_line),
      make("fig1_right", "Standing dipole current as rotating phasors", ScenarioKind::standing_phasor),
      make("fig2_left", "Volume element bounded by coordinate surfaces", ScenarioKind::volume_element),
      make("fig2_right", "Unit-vector triples on the main circles", ScenarioKind::unit_triples),
      make("fig3_left", "Coordinate surfaces through a first-octant point", ScenarioKind::scs_composite),
      make("fig3_right", "Sphere and cone intersection, theta 0 to 180 degrees", ScenarioKind::sphere_cone_sweep),
      make("fig4_left", "Linear, circular and elliptical polarization", ScenarioKind::polarization_triptych),
      make("fig4_right", "Field split into E_c and E_s", ScenarioKind::field_decomposition),
      make("fig5_left", "Clockwise ellipse traced toward y", ScenarioKind::ellipse_trace),
      make("fig5_right", "Counter-clockwise far-field ellipse", ScenarioKind::farfield_ellipse),
      make("fig6", "Crossed short dipoles with 90 degree phase", ScenarioKind::crossed_dipoles),
      make("fig7", "Two-dipole array pattern and main-plane cuts", ScenarioKind::two_dipole_array),
      make("fig8", "Anechoic chamber pattern measurement", ScenarioKind::anechoic_sweep),
      make("fig9", "Interactive dipole explorer", ScenarioKind::explorer_default),
      make("fig10", "Dipole characteristics versus length", ScenarioKind::characteristics),
  };
  return specs;
}

const ScenarioSpec& find_scenario(const std::string& id) {
  for (const auto& s : catalog())
    if (s.id == id) return s;
  throw Error(ErrorCode::unknown_scenario, "unknown scenario '" + id + "'");
}

ScenarioSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "id" && key != "title" && key != "kind" && key != "params" && key != "frames" &&
        key != "viewpoints") {
      throw Error(ErrorCode::parse_error, "unknown key '" + key + "'");
    }
  }
  ScenarioSpec s;
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    throw Error(ErrorCode::parse_error, "key 'id' must be a non-empty string");
  }
  s.id = j["id"].get<std::string>();
  for (char c : s.id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      throw Error(ErrorCode::parse_error, "key 'id' may only contain letters, digits, '_' and '-'");
    }
  }
  if (j.contains("title")) {
    if (!j["title"].is_string()) throw Error(ErrorCode::parse_error, "key 'title' must be a string");
    s.title = j["title"].get<std::string>();
  }
  if (!j.contains("kind") || !j["kind"].is_string()) throw Error(ErrorCode::parse_error, "key 'kind' must be a string");
  s.kind = kind_from_string(j["kind"].get<std::string>());
  s.params = resolve_params(s.kind, j.value("params", json::object()));
  s.n_frames = default_frames(s.kind);
  if (j.contains("frames")) {
    const auto& f = j["frames"];
    if (!f.is_number_integer() || f.get<long long>() < 1 || f.get<long long>() > 10000) {
      throw Error(ErrorCode::parse_error, "key 'frames' must be an integer in [1, 10000]");
    }
    s.n_frames = f.get<int>();
  }
  if (j.contains("viewpoints")) {
    if (!j["viewpoints"].is_array() || j["viewpoints"].empty()) {
      throw Error(ErrorCode::parse_error, "key 'viewpoints' must be a non-empty array");
    }
    for (const auto& v : j["viewpoints"]) s.viewpoints.push_back(viewpoint_from_json(v));
  } else {
    s.viewpoints = default_viewpoints(s.kind);
  }
  return s;
}

ScenarioSpec parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
  return spec_from_json(j);
}

ordered_json spec_to_json(const ScenarioSpec& spec) {
  ordered_json j;
  j["id"] = spec.id;
  j["title"] = spec.title;
  j["kind"] = to_string(spec.kind);
  j["params"] = ordered_json::parse(spec.params.dump());
  j["frames"] = spec.n_frames;
  j["viewpoints"] = ordered_json::array();
  for (const auto& v : spec.viewpoints) j["viewpoints"].push_back(ordered_json::parse(viewpoint_json(v).dump()));
  return j;
}

farfield::Convention convention_from_string(const std::string& name) {
  if (name == "toward_observer") return farfield::Convention::toward_observer;
  if (name == "toward_source") return farfield::Convention::toward_source;
  throw Error(ErrorCode::parse_error, "convention must be toward_observer or toward_source");
}

farfield::DipoleElement element_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "element must be an object");
  json merged = {{"kind", "sinusoidal"},
                 {"center", json::array({0.0, 0.0, 0.0})},
                 {"length", 0.5},
                 {"amplitude", 1.0},
                 {"phase_deg", 0.0}};
  if (!j.contains("axis")) bad("axis", "is missing");
  for (const auto& [key, value] : j.items()) {
    if (key != "axis" && !merged.contains(key)) bad(key, "is not a known element key");
    merged[key] = value;
  }
  const Params p(merged);
  const std::string kind = p.choice("kind", {"sinusoidal", "short"});
  const Vec3 center = p.vec3("center", false);
  const Vec3 axis = p.vec3("axis");
  const double amplitude = p.number("amplitude", 0.0, 1e6);
  const double phase = deg2rad(p.number("phase_deg", -1e6, 1e6));
  if (kind == "short") return farfield::DipoleElement::short_dipole(center, axis, amplitude, phase);
  return farfield::DipoleElement::sinusoidal(center, axis, p.number("length", 1e-6, 100.0), amplitude, phase);
}

ordered_json element_to_json(const farfield::DipoleElement& e) {
  ordered_json j;
  const bool is_short = e.kind() == farfield::DipoleKind::short_dipole;
  j["kind"] = is_short ? "short" : "sinusoidal";
  j["center"] = ordered_json::array({round9(e.center().x), round9(e.center().y), round9(e.center().z)});
  j["axis"] = ordered_json::array({round9(e.axis().x), round9(e.axis().y), round9(e.axis().z)});
  if (!is_short) j["length"] = round9(e.length());
  j["amplitude"] = round9(e.amplitude());
  j["phase_deg"] = round9(rad2deg(e.phase()));
  return j;
}

farfield::AntennaArray array_from_json(const json& elements) {
  if (!elements.is_array() || elements.empty()) bad("elements", "must be a non-empty array");
  if (elements.size() > 64) bad("elements", "may hold at most 64 elements");
  std::vector<farfield::DipoleElement> out;
  for (const auto& e : elements) out.push_back(element_from_json(e));
  return farfield::AntennaArray(std::move(out));
}

}  // namespace virtlab::scenarios
