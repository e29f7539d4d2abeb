#pragma once

#include "virtlab/scenarios.hpp"

namespace virtlab::scenarios::detail {

/// Reads every parameter of the kind; throws parse_error naming the key.
void check_params(ScenarioKind kind, const json& params);

BuildResult build_kind(const ScenarioSpec& spec);

}  // namespace virtlab::scenarios::detail
