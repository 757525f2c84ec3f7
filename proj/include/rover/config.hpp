// Configuration loading: TOML-syntax text files with every key optional,
// defaulting to the reference rover under lunar gravity.
#pragma once

#include <rover/parameters.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace rover {

/// Sweep grids and scenario geometry shared by all modules.
struct SweepConfig {
    std::vector<scalar_t> speeds{0.05, 0.1, 0.25, 0.5, 0.75, 1.0};
    std::vector<scalar_t> step_heights{0.01, 0.02, 0.03, 0.04, 0.05, 0.06,
                                       0.07, 0.08, 0.09, 0.10, 0.11, 0.12};
    std::vector<scalar_t> slope_angles_deg{5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    scalar_t rock_radius = 0.10;
    scalar_t outcrop_max_height = 0.10;
    scalar_t outcrop_length = 1.5;
    scalar_t outcrop_width = 0.3;
    scalar_t slope_length = 1.5;
    std::vector<std::string> modules{"step", "rock", "outcrop", "slope"};
    std::vector<std::string> modes{"DR", "IE", "MHS"};
    int trace_stride = 20;  ///< persisted-trace decimation for sweep cells
    int jobs = 1;
};

struct SimConfig {
    RoverParameters rover;
    scalar_t soil_friction = 0.4;
    scalar_t obstacle_friction = 1.0;
    SuspensionMode suspension = SuspensionMode::MHS;
    scalar_t timeout = 30.0;
    scalar_t sigma_window = 1.0;  ///< s, sliding window for the sigma statistic
    std::uint32_t seed = 1;
    std::string output_dir = "out";
    SweepConfig sweep;

    void validate() const;  ///< throws ValidationError naming the key

    /// Canonical key=value dump; identical configs hash identically.
    std::string canonical_dump() const;
    std::string hash() const;  ///< FNV-1a over the canonical dump, hex
};

SimConfig default_config();

/// Parses and validates a config file. Unspecified keys keep their
/// defaults; an empty file yields default_config().
SimConfig load_config(const std::string& path);

/// Same, from in-memory text.
SimConfig parse_config_text(const std::string& text);

/// Minimal TOML subset used by the config files: [section] headers,
/// key = value with numbers, booleans, quoted strings, and single-line
/// arrays; # comments. Exposed for tests.
using TomlValue = std::variant<scalar_t, bool, std::string, std::vector<scalar_t>,
                               std::vector<std::string>>;
std::map<std::string, TomlValue> parse_toml(const std::string& text);

} // namespace rover
