#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "virtlab/farfield.hpp"
#include "virtlab/patterns.hpp"
#include "virtlab/scene.hpp"

namespace virtlab::scenarios {

using nlohmann::json;
using nlohmann::ordered_json;

enum class ScenarioKind {
  waves_line,
  standing_phasor,
  volume_element,
  unit_triples,
  scs_composite,
  sphere_cone_sweep,
  polarization_triptych,
  field_decomposition,
  ellipse_trace,
  farfield_ellipse,
  crossed_dipoles,
  two_dipole_array,
  anechoic_sweep,
  explorer_default,
  characteristics,
};

const char* to_string(ScenarioKind k);
/// Throws unknown_kind.
ScenarioKind kind_from_string(const std::string& name);
const std::vector<ScenarioKind>& all_kinds();

/// One presentation: a kind, its fully resolved parameters (angles in
/// degrees, lengths in wavelengths), frame count and viewpoints.
struct ScenarioSpec {
  std::string id;
  std::string title;
  ScenarioKind kind = ScenarioKind::waves_line;
  json params = json::object();
  int n_frames = 1;
  std::vector<Viewpoint> viewpoints;

  bool operator==(const ScenarioSpec& o) const;
};

/// The built-in catalog, fig1_left through fig10.
const std::vector<ScenarioSpec>& catalog();

/// Throws unknown_scenario.
const ScenarioSpec& find_scenario(const std::string& id);

/// Parameter defaults of a kind.
json default_params(ScenarioKind kind);
int default_frames(ScenarioKind kind);
std::vector<Viewpoint> default_viewpoints(ScenarioKind kind);

/// Defaults overlaid with `given`; unknown keys and bad values throw
/// parse_error naming the key.
json resolve_params(ScenarioKind kind, const json& given);

/// {"id","title"?,"kind","params","frames"?,"viewpoints"?}.
ScenarioSpec parse_config(const std::string& text);
ScenarioSpec spec_from_json(const json& j);
ordered_json spec_to_json(const ScenarioSpec& spec);

/// Element schema shared by configs and the HTTP API:
/// {"kind":"sinusoidal"|"short","center":[x,y,z],"axis":[x,y,z],
///  "length":L,"amplitude":a,"phase_deg":p}; all but "axis" optional.
farfield::DipoleElement element_from_json(const json& j);
ordered_json element_to_json(const farfield::DipoleElement& e);
farfield::AntennaArray array_from_json(const json& elements);

farfield::Convention convention_from_string(const std::string& name);

struct BuildResult {
  Scene scene;
  int n_frames = 1;
  ordered_json products;  // kind-specific data, exported as <id>.json
  std::vector<patterns::PlaneCut> cuts;  // exported as <id>_cuts.svg when present
  std::optional<patterns::PatternGrid> pattern;
};

BuildResult build(const ScenarioSpec& spec);

}  // namespace virtlab::scenarios
