#pragma once

// The analysis commands behind the anchorvote tool. Each writes its results
// under config.out and returns a process exit code.

#include <iosfwd>
#include <string>

#include "anchorvote/config.hpp"
#include "anchorvote/verify.hpp"

namespace anchorvote {

enum class ExitCode : int { ok = 0, validation = 1, invariant = 2, resource = 3 };

/// p and q (standard and anchored menus) as measure.json and measure.csv.
int cmd_measure(const ExperimentConfig& config, std::ostream& log);

/// Standard and anchored bounds for argmax w, one row per alpha:
/// bounds.json and bounds.csv. Throws Unsupported for veto.
int cmd_bounds(const ExperimentConfig& config, std::ostream& log);

/// Welfare statistics, one row per alpha: welfare.json and welfare.csv.
int cmd_welfare(const ExperimentConfig& config, std::ostream& log);

/// Cell polygons of the standard and anchored menus and the top-k region on
/// a barycentric grid, as planar-coordinate CSV. Throws Unsupported unless m = 3.
int cmd_figures(const ExperimentConfig& config, std::ostream& log);

/// Runs the verification suite; writes verify_summary.json. Exit code 2 when
/// a gating check fails.
int cmd_verify(const ExperimentConfig& config, std::ostream& log);

/// Loads the configuration, dispatches by name and turns exceptions into exit
/// codes (validation and unsupported requests 1, resource limits 3).
int run_command(const std::string& name, const std::string& config_path, const ConfigOverrides& overrides,
                std::ostream& log);

}  // namespace anchorvote
