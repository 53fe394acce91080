#pragma once

// Plain-text key=value configuration for sweeps. '#' starts a comment; blank
// lines are ignored; unknown keys are rejected with their line number.

#include <iosfwd>
#include <string>

#include "dbpca/experiments.h"

namespace dbpca {

/// Applies the settings in `in` on top of `base`.
SweepConfig parse_sweep_config(std::istream& in, SweepConfig base = {});
SweepConfig load_sweep_config(const std::string& path, SweepConfig base = {});

/// Applies a single key/value pair; throws std::invalid_argument for unknown
/// keys or malformed values.
void apply_setting(SweepConfig& config, const std::string& key,
                   const std::string& value);

/// Writes every recognized key with its current value.
void write_sweep_config(std::ostream& out, const SweepConfig& config);

}  // namespace dbpca
