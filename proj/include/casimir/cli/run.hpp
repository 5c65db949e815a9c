#pragma once

// Executes a validated RunConfig and renders the report as JSON or CSV.

#include <string>
#include <vector>

#include <json.hpp>

#include "casimir/cli/config.hpp"
#include "casimir/pfa_gradient.hpp"

namespace casimir::cli {

inline constexpr int kSchemaVersion = 1;
std::string library_version();

struct RunReport {
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json results;
    nlohmann::ordered_json convergence;
    std::vector<std::string> warnings;
    /// false when a quadrature, truncation or sweep point did not converge
    bool converged = true;
    double wall_time_s = 0.0;
    /// CSV rendering: fixed header and rows
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

/// Dispatches to the physics modules. Errors propagate as exceptions with
/// the subcommand name prepended.
RunReport run(const RunConfig& config);

/// Exit status: 0 success, 2 convergence warning.
inline int exit_code(const RunReport& r) { return r.converged ? 0 : 2; }

/// Full JSON document (schema_version, library_version, inputs, results,
/// convergence, warnings, wall_time_s). Non-finite numbers become strings.
std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);

/// Error document for a failed run.
std::string error_json(const std::string& message);

/// Reads a height profile: first line "dx,dy", second line their values,
/// then one comma-separated row of heights per y sample.
pfa::SurfaceProfile read_profile_csv(const std::string& path);

}  // namespace casimir::cli
