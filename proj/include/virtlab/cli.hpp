#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace virtlab {

/// virtlab list | show <id> | build <id|config.json> | sweep | serve.
/// args excludes the program name. Exit codes: 0 ok, 1 usage, 2 compute.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace virtlab
