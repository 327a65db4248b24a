#pragma once

#include <optional>
#include <string>

#include "ksfem/presets.hpp"
#include "ksfem/solver.hpp"

namespace ksfem {

/// Full run description: a preset plus overrides from config file and
/// command line. Every key has a default taken from the preset.
struct RunConfig {
  Preset preset;
  SolverConfig solver;
  std::string output_dir = "out";
  std::string csv_path = "timeseries.csv";  // relative to output_dir
  std::optional<int> snapshot_every;        // >= 1 when set
  std::optional<int> steps_override;
  std::optional<std::string> mesh_file;     // external mesh replaces the preset's

  int n_steps() const {
    return steps_override ? *steps_override : preset.default_steps();
  }
};

/// Builds the run configuration for a preset, with solver defaults taken
/// from the preset's experiment definition.
RunConfig make_run_config(const std::string& preset_name);

/// Applies an INI-style config file: sections [mesh], [solver], [output] with
/// key = value lines and '#' comments. "section.key = value" outside any
/// section header is accepted as well. Unknown keys and malformed values are
/// ConfigErrors that name the offending key and line.
void apply_config_file(RunConfig& config, const std::string& path);

/// Applies one "section.key=value" override (the command-line form).
void apply_override(RunConfig& config, const std::string& dotted_key,
                    const std::string& value);

}  // namespace ksfem
