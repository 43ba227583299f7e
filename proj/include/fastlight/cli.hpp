#pragma once

#include <string>
#include <vector>

namespace fastlight {

/// Command-line entry point.  Subcommands: propagate, sweep, traces,
/// fit-lineshape, fit-power, analyze, search-max; each takes --config and
/// --out.  Returns 0 on success, 1 on validation errors (bad arguments,
/// malformed inputs), 2 on numeric failures.  Relative --out paths honor the
/// FASTLIGHT_OUT_DIR environment variable.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace fastlight
