#pragma once

#include <string>

#include "json.hpp"
#include "virtlab/farfield.hpp"
#include "virtlab/patterns.hpp"
#include "virtlab/scenarios.hpp"

// Request parsing and payload writers shared by the HTTP service and the CLI.
// Angles are degrees on this side; every number goes through round9.
namespace virtlab::api {

using nlohmann::json;
using nlohmann::ordered_json;

struct PatternRequest {
  farfield::AntennaArray array;
  SphericalGrid grid;
  patterns::Mapping mapping = patterns::Mapping::field;
};

struct PolarizationRequest {
  farfield::AntennaArray array;
  double theta_deg = 90.0;
  double phi_deg = 0.0;
  farfield::Convention convention = farfield::Convention::toward_observer;
};

struct CharacteristicsRequest {
  double length = 0.5;
  bool require_r_in = true;  // false: report anti_resonant instead of failing
  int cut_samples = 360;
};

/// Each throws parse_error naming the offending field.
PatternRequest parse_pattern_request(const json& body);
PolarizationRequest parse_polarization_request(const json& body);
CharacteristicsRequest parse_characteristics_request(const json& body);

/// [{id,title,kind}] over the catalog.
ordered_json scenario_list();

/// {axial_ratio (null when linear), handedness, classification, major, minor}.
ordered_json polarization_json(const farfield::PolarizationEllipse& e);

/// {plane, angles_deg, values}.
ordered_json cut_json(const patterns::PlaneCut& cut);

/// {length, directivity, r_in | anti_resonant, theta_max_deg[, cut]}.
ordered_json characteristics_json(const patterns::DipoleCharacteristics& row, bool with_cut);

/// {l_min, l_max, steps, rows:[...]} without cuts.
ordered_json characteristics_table(double l_min, double l_max, int steps,
                                   const std::vector<patterns::DipoleCharacteristics>& rows);

/// The library computations behind the POST endpoints.
farfield::PolarizationEllipse evaluate(const PolarizationRequest& req);
patterns::DipoleCharacteristics evaluate(const CharacteristicsRequest& req);

}  // namespace virtlab::api
