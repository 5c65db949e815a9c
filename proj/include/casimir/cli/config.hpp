#pragma once

// Run configuration for the batch front end: a strict flat key-value schema,
// an INI-style file format, and a canonical serialization that re-parses to
// an identical configuration.
//
// File layout:
//   subcommand = sphere-plate
//   tol = 1e-8
//   [sphere-plate]
//   R = 1
//   d = 0.1
// Keys may also be written fully dotted at top level (sphere-plate.R = 1).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::cli {

/// Raised for unknown keys, type mismatches and constraint violations. The
/// message starts with the offending key path.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ParamKind {
    Length,        ///< > 0
    LengthOrInf,   ///< > 0, "inf" allowed
    NonNegative,   ///< >= 0
    Real,          ///< finite
    LengthList,    ///< comma-separated, each > 0
    Choice,        ///< one of choices
    Path,
};

struct ParamSpec {
    std::string key;
    ParamKind kind;
    std::string default_value;  ///< empty: required unless optional
    bool optional = false;      ///< may be absent without a default
    std::vector<std::string> choices;
    std::string help;
};

struct SubcommandSpec {
    std::string name;
    std::string summary;
    std::string example;
    std::vector<ParamSpec> params;
    int materials = 0;  ///< number of material_N groups (0, or 2)
};

const std::vector<SubcommandSpec>& subcommands();
const SubcommandSpec& subcommand_spec(const std::string& name);

struct RunConfig {
    std::string subcommand;
    double tol = 1e-8;
    std::string format = "json";   ///< json | csv
    std::string units = "natural"; ///< natural | si
    int l_max = 0;                 ///< 0: automatic
    int nu_max = 10;
    /// Subcommand parameters keyed without the subcommand prefix, values in
    /// canonical text form (material groups as material_N.type etc).
    std::map<std::string, std::string> params;

    bool operator==(const RunConfig&) const = default;
};

/// Parses INI text. Throws ConfigError. The result is not yet validated
/// against the subcommand schema (flags may still override it).
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Sets one value given by key path (either a global key or a subcommand
/// parameter / material_N.field). Throws ConfigError for unknown keys.
void set_value(RunConfig& config, const std::string& key, const std::string& value);

/// Expands a material flag pec | vacuum | plasma:wp | drude:wp:gamma | const:eps
/// into material_N.* keys (frequencies in eV when units = si).
void set_material(RunConfig& config, int index, const std::string& spec);

/// Checks every key and constraint, fills defaults and canonicalizes values.
/// Throws ConfigError naming the key path.
void validate(RunConfig& config);

/// Canonical INI text; parse_config_text(serialize(c)) == c for validated c.
std::string serialize(const RunConfig& config);

// Typed access to validated parameters.
double get_real(const RunConfig& config, const std::string& key);
std::vector<double> get_list(const RunConfig& config, const std::string& key);
std::string get_text(const RunConfig& config, const std::string& key);
bool has(const RunConfig& config, const std::string& key);
/// Material group index (1 or 2) in natural units (frequencies converted from
/// eV when units = si).
materials::DielectricModel get_material(const RunConfig& config, int index);

/// Shortest text that reads back to the same double ("inf" for infinity).
std::string format_real(double v);

}  // namespace casimir::cli
