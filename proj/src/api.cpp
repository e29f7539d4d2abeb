#include "virtlab/api.hpp"

#include <cmath>

#include "params.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"

namespace virtlab::api {

using scenarios::detail::bad;
using scenarios::detail::Params;

namespace {

void only_keys(const json& body, std::initializer_list<const char*> keys, const std::string& prefix = "") {
  if (!body.is_object()) {
    throw Error(ErrorCode::parse_error, prefix.empty() ? "request body must be a JSON object"
                                                       : "field '" + prefix + "' must be an object");
  }
  for (const auto& [k, _] : body.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) bad(prefix.empty() ? k : prefix + "." + k, "is not a known field");
  }
}

int grid_count(const json& g, const char* key, int lo, int hi) {
  const std::string name = std::string("grid.") + key;
  if (!g.contains(key)) bad(name, "is missing");
  const auto& v = g[key];
  if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > hi) {
    bad(name, "must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v.get<int>();
}

ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round9(x);
}

ordered_json vjson(const Vec3& v) { return ordered_json::array({round9(v.x), round9(v.y), round9(v.z)}); }

}  // namespace

PatternRequest parse_pattern_request(const json& body) {
  only_keys(body, {"elements", "grid", "mapping"});
  if (!body.contains("elements")) bad("elements", "is missing");
  PatternRequest req{scenarios::array_from_json(body["elements"]), {31, 60}, patterns::Mapping::field};
  if (body.contains("grid")) {
    const auto& g = body["grid"];
    only_keys(g, {"n_theta", "n_phi"}, "grid");
    req.grid.n_theta = grid_count(g, "n_theta", 3, 721);
    req.grid.n_phi = grid_count(g, "n_phi", 4, 1440);
  }
  if (body.contains("mapping")) {
    const std::string m = Params(body).choice("mapping", {"field", "power"});
    req.mapping = m == "power" ? patterns::Mapping::power : patterns::Mapping::field;
  }
  return req;
}

PolarizationRequest parse_polarization_request(const json& body) {
  only_keys(body, {"elements", "direction", "convention"});
  if (!body.contains("elements")) bad("elements", "is missing");
  PolarizationRequest req{scenarios::array_from_json(body["elements"]), 90.0, 0.0,
                          farfield::Convention::toward_observer};
  if (!body.contains("direction")) bad("direction", "is missing");
  const auto& d = body["direction"];
  only_keys(d, {"theta_deg", "phi_deg"}, "direction");
  for (const char* key : {"theta_deg", "phi_deg"}) {
    if (!d.contains(key)) bad(std::string("direction.") + key, "is missing");
    if (!d[key].is_number() || !std::isfinite(d[key].get<double>())) {
      bad(std::string("direction.") + key, "must be a finite number");
    }
  }
  req.theta_deg = d["theta_deg"].get<double>();
  req.phi_deg = d["phi_deg"].get<double>();
  if (req.theta_deg < 0.0 || req.theta_deg > 180.0) bad("direction.theta_deg", "must lie in [0, 180]");
  if (body.contains("convention")) {
    const std::string c = Params(body).choice("convention", {"toward_observer", "toward_source"});
    req.convention = scenarios::convention_from_string(c);
  }
  return req;
}

CharacteristicsRequest parse_characteristics_request(const json& body) {
  only_keys(body, {"length", "require_r_in", "cut_samples"});
  const Params p(body);
  CharacteristicsRequest req;
  req.length = p.number("length", 1e-3, 10.0);
  if (body.contains("require_r_in")) {
    if (!body["require_r_in"].is_boolean()) bad("require_r_in", "must be a boolean");
    req.require_r_in = body["require_r_in"].get<bool>();
  }
  if (body.contains("cut_samples")) req.cut_samples = p.integer("cut_samples", 4, 3600);
  return req;
}

ordered_json scenario_list() {
  ordered_json out = ordered_json::array();
  for (const auto& s : scenarios::catalog()) {
    out.push_back({{"id", s.id}, {"title", s.title}, {"kind", scenarios::to_string(s.kind)}});
  }
  return out;
}

ordered_json polarization_json(const farfield::PolarizationEllipse& e) {
  ordered_json j;
  j["axial_ratio"] = num(e.axial_ratio);
  j["handedness"] = farfield::to_string(e.handedness);
  j["classification"] = farfield::to_string(e.classification);
  j["major"] = vjson(e.major_axis);
  j["minor"] = vjson(e.minor_axis);
  return j;
}

ordered_json cut_json(const patterns::PlaneCut& cut) {
  ordered_json j;
  j["plane"] = patterns::to_string(cut.plane);
  j["angles_deg"] = ordered_json::array();
  for (double a : cut.angles) j["angles_deg"].push_back(num(rad2deg(a)));
  j["values"] = ordered_json::array();
  for (double v : cut.values) j["values"].push_back(num(v));
  return j;
}

ordered_json characteristics_json(const patterns::DipoleCharacteristics& row, bool with_cut) {
  ordered_json j;
  j["length"] = num(row.length);
  j["directivity"] = num(row.directivity);
  if (row.r_in) {
    j["r_in"] = num(*row.r_in);
  } else {
    j["anti_resonant"] = true;
  }
  j["theta_max_deg"] = row.theta_max_deg ? num(*row.theta_max_deg) : ordered_json(nullptr);
  if (with_cut) j["cut"] = cut_json(row.cut);
  return j;
}

ordered_json characteristics_table(double l_min, double l_max, int steps,
                                   const std::vector<patterns::DipoleCharacteristics>& rows) {
  ordered_json j;
  j["l_min"] = num(l_min);
  j["l_max"] = num(l_max);
  j["steps"] = steps;
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) j["rows"].push_back(characteristics_json(r, false));
  return j;
}

farfield::PolarizationEllipse evaluate(const PolarizationRequest& req) {
  const double t = deg2rad(req.theta_deg), p = deg2rad(req.phi_deg);
  const Vec3 d{std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
  return farfield::polarization(farfield::array_farfield(req.array, d), d, req.convention);
}

patterns::DipoleCharacteristics evaluate(const CharacteristicsRequest& req) {
  patterns::CharacteristicsOptions opts;
  opts.cut_samples = req.cut_samples;
  auto row = patterns::characteristics(req.length, opts);
  if (req.require_r_in && !row.r_in) {
    throw Error(ErrorCode::anti_resonant, "length " + format_number(req.length) +
                                              " is anti-resonant: input resistance undefined");
  }
  return row;
}

}  // namespace virtlab::api
