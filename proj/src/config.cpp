#include <rover/config.hpp>

#include <rover/errors.hpp>
#include <rover/format.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rover {
namespace {

constexpr scalar_t kDegToRad = 3.14159265358979323846 / 180.0;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_scalar(const std::string& raw, int line_no) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        return raw.substr(1, raw.size() - 2);
    }
    if (raw == "true") return true;
    if (raw == "false") return false;
    try {
        std::size_t used = 0;
        const scalar_t value = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse value '" + raw +
                         "'");
    }
}

TomlValue parse_value(const std::string& raw, int line_no) {
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') {
            throw ParseError("line " + std::to_string(line_no) + ": unterminated array");
        }
        std::vector<scalar_t> numbers;
        std::vector<std::string> strings;
        bool has_number = false;
        bool has_string = false;
        std::string body = raw.substr(1, raw.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            TomlValue value = parse_scalar(item, line_no);
            if (std::holds_alternative<scalar_t>(value)) {
                numbers.push_back(std::get<scalar_t>(value));
                has_number = true;
            } else if (std::holds_alternative<std::string>(value)) {
                strings.push_back(std::get<std::string>(value));
                has_string = true;
            } else {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unsupported array element '" + item + "'");
            }
        }
        if (has_number && has_string) {
            throw ParseError("line " + std::to_string(line_no) + ": mixed array types");
        }
        if (has_string) return strings;
        return numbers;
    }
    return parse_scalar(raw, line_no);
}

// Keys are accepted either bare or under their documented section.
const std::set<std::string> kRoverKeys = {
    "wheel_radius", "wheelbase", "arm_length", "wheel_track", "com_height",
    "spring_rate", "damping", "spring_free_length", "total_mass",
    "front_static_load", "rear_static_load", "unsprung_mass", "rocker_limit_deg",
    "gravity", "contact_stiffness", "contact_damping", "friction_regularization",
    "timestep"};
const std::set<std::string> kContactKeys = {"mu_soil", "mu_obstacle"};
const std::set<std::string> kSimulationKeys = {"suspension", "timeout", "sigma_window",
                                               "seed"};
const std::set<std::string> kSweepKeys = {
    "speeds", "step_heights", "slope_angles_deg", "rock_radius", "outcrop_max_height",
    "outcrop_length", "outcrop_width", "slope_length", "modules", "modes",
    "trace_stride", "jobs"};
const std::set<std::string> kOutputKeys = {"directory"};

struct KeyLookup {
    std::string leaf;
    std::string section;  // empty when written bare
};

KeyLookup split_key(const std::string& key) {
    const auto dot = key.rfind('.');
    if (dot == std::string::npos) return {key, ""};
    return {key.substr(dot + 1), key.substr(0, dot)};
}

scalar_t as_number(const TomlValue& value, const std::string& key) {
    if (!std::holds_alternative<scalar_t>(value)) {
        throw ValidationError(key + ": expected a number");
    }
    return std::get<scalar_t>(value);
}

std::string as_string(const TomlValue& value, const std::string& key) {
    if (!std::holds_alternative<std::string>(value)) {
        throw ValidationError(key + ": expected a string");
    }
    return std::get<std::string>(value);
}

std::vector<scalar_t> as_numbers(const TomlValue& value, const std::string& key) {
    if (std::holds_alternative<std::vector<scalar_t>>(value)) {
        return std::get<std::vector<scalar_t>>(value);
    }
    if (std::holds_alternative<scalar_t>(value)) {
        return {std::get<scalar_t>(value)};
    }
    throw ValidationError(key + ": expected an array of numbers");
}

std::vector<std::string> as_strings(const TomlValue& value, const std::string& key) {
    if (std::holds_alternative<std::vector<std::string>>(value)) {
        return std::get<std::vector<std::string>>(value);
    }
    if (std::holds_alternative<std::string>(value)) {
        return {std::get<std::string>(value)};
    }
    throw ValidationError(key + ": expected an array of strings");
}

} // namespace

std::map<std::string, TomlValue> parse_toml(const std::string& text) {
    std::map<std::string, TomlValue> values;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("line " + std::to_string(line_no) + ": malformed section");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": empty section name");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        values[full] = parse_value(raw, line_no);
    }
    return values;
}

SimConfig default_config() { return SimConfig{}; }

SimConfig parse_config_text(const std::string& text) {
    const auto values = parse_toml(text);
    SimConfig config;

    for (const auto& [key, value] : values) {
        const KeyLookup parts = split_key(key);
        const std::string& leaf = parts.leaf;
        const std::string& section = parts.section;
        auto in_section = [&section](const char* name) {
            return section.empty() || section == name;
        };

        if (in_section("rover") && kRoverKeys.count(leaf)) {
            RoverParameters& r = config.rover;
            if (leaf == "wheel_radius") r.wheel_radius = as_number(value, key);
            else if (leaf == "wheelbase") r.wheelbase = as_number(value, key);
            else if (leaf == "arm_length") r.arm_length = as_number(value, key);
            else if (leaf == "wheel_track") r.wheel_track = as_number(value, key);
            else if (leaf == "com_height") r.com_height = as_number(value, key);
            else if (leaf == "spring_rate") r.spring_rate = as_number(value, key);
            else if (leaf == "damping") r.damping = as_number(value, key);
            else if (leaf == "spring_free_length") r.spring_free_length = as_number(value, key);
            else if (leaf == "total_mass") r.total_mass = as_number(value, key);
            else if (leaf == "front_static_load") r.front_static_load = as_number(value, key);
            else if (leaf == "rear_static_load") r.rear_static_load = as_number(value, key);
            else if (leaf == "unsprung_mass") r.unsprung_mass = as_number(value, key);
            else if (leaf == "rocker_limit_deg") r.rocker_limit = as_number(value, key) * kDegToRad;
            else if (leaf == "gravity") r.gravity = as_number(value, key);
            else if (leaf == "contact_stiffness") r.contact_stiffness = as_number(value, key);
            else if (leaf == "contact_damping") r.contact_damping = as_number(value, key);
            else if (leaf == "friction_regularization")
                r.friction_regularization = as_number(value, key);
            else if (leaf == "timestep") r.timestep = as_number(value, key);
        } else if (in_section("contact") && kContactKeys.count(leaf)) {
            if (leaf == "mu_soil") config.soil_friction = as_number(value, key);
            else config.obstacle_friction = as_number(value, key);
        } else if (in_section("simulation") && kSimulationKeys.count(leaf)) {
            if (leaf == "suspension") {
                config.suspension = parse_suspension_mode(as_string(value, key));
            } else if (leaf == "timeout") {
                config.timeout = as_number(value, key);
            } else if (leaf == "sigma_window") {
                config.sigma_window = as_number(value, key);
            } else {
                config.seed = static_cast<std::uint32_t>(as_number(value, key));
            }
        } else if (in_section("sweep") && kSweepKeys.count(leaf)) {
            SweepConfig& s = config.sweep;
            if (leaf == "speeds") s.speeds = as_numbers(value, key);
            else if (leaf == "step_heights") s.step_heights = as_numbers(value, key);
            else if (leaf == "slope_angles_deg") s.slope_angles_deg = as_numbers(value, key);
            else if (leaf == "rock_radius") s.rock_radius = as_number(value, key);
            else if (leaf == "outcrop_max_height") s.outcrop_max_height = as_number(value, key);
            else if (leaf == "outcrop_length") s.outcrop_length = as_number(value, key);
            else if (leaf == "outcrop_width") s.outcrop_width = as_number(value, key);
            else if (leaf == "slope_length") s.slope_length = as_number(value, key);
            else if (leaf == "modules") s.modules = as_strings(value, key);
            else if (leaf == "modes") s.modes = as_strings(value, key);
            else if (leaf == "trace_stride")
                s.trace_stride = static_cast<int>(as_number(value, key));
            else s.jobs = static_cast<int>(as_number(value, key));
        } else if (in_section("output") && kOutputKeys.count(leaf)) {
            config.output_dir = as_string(value, key);
        } else {
            throw ValidationError("unknown config key: " + key);
        }
    }

    config.validate();
    return config;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void SimConfig::validate() const {
    rover.validate();
    if (!(soil_friction >= 0.0) || !std::isfinite(soil_friction)) {
        throw ValidationError("mu_soil must be non-negative");
    }
    if (!(obstacle_friction >= 0.0) || !std::isfinite(obstacle_friction)) {
        throw ValidationError("mu_obstacle must be non-negative");
    }
    if (!(timeout > 0.0)) throw ValidationError("timeout must be strictly positive");
    if (!(sigma_window > 0.0)) {
        throw ValidationError("sigma_window must be strictly positive");
    }
    if (sweep.jobs < 1) throw ValidationError("jobs must be at least 1");
    if (sweep.trace_stride < 1) throw ValidationError("trace_stride must be at least 1");
    auto check_grid = [](const std::vector<scalar_t>& grid, const char* key) {
        if (grid.empty()) throw ValidationError(std::string(key) + " must not be empty");
        for (scalar_t v : grid) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ValidationError(std::string(key) + " entries must be strictly positive");
            }
        }
    };
    check_grid(sweep.speeds, "speeds");
    check_grid(sweep.step_heights, "step_heights");
    check_grid(sweep.slope_angles_deg, "slope_angles_deg");
    if (!(sweep.rock_radius > 0.0)) throw ValidationError("rock_radius must be positive");
    if (!(sweep.outcrop_max_height > 0.0)) {
        throw ValidationError("outcrop_max_height must be positive");
    }
    if (!(sweep.outcrop_length > 0.0)) throw ValidationError("outcrop_length must be positive");
    if (!(sweep.outcrop_width > 0.0)) throw ValidationError("outcrop_width must be positive");
    if (!(sweep.slope_length > 0.0)) throw ValidationError("slope_length must be positive");
    const std::set<std::string> known_modules = {"step", "rock", "outcrop", "slope", "flat"};
    for (const std::string& m : sweep.modules) {
        if (!known_modules.count(m)) throw ValidationError("modules: unknown module '" + m + "'");
    }
    for (const std::string& m : sweep.modes) {
        parse_suspension_mode(m);  // throws on unknown
    }
}

std::string SimConfig::canonical_dump() const {
    std::ostringstream out;
    auto kv = [&out](const char* key, const std::string& value) {
        out << key << '=' << value << '\n';
    };
    auto kvn = [&kv](const char* key, scalar_t value) { kv(key, format_number(value)); };
    auto kva = [&out](const char* key, const std::vector<scalar_t>& values) {
        out << key << '=';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ';';
            out << format_number(values[i]);
        }
        out << '\n';
    };
    auto kvs = [&out](const char* key, const std::vector<std::string>& values) {
        out << key << '=';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ';';
            out << values[i];
        }
        out << '\n';
    };
    const RoverParameters& r = rover;
    kvn("rover.wheel_radius", r.wheel_radius);
    kvn("rover.wheelbase", r.wheelbase);
    kvn("rover.arm_length", r.arm_length);
    kvn("rover.wheel_track", r.wheel_track);
    kvn("rover.com_height", r.com_height);
    kvn("rover.spring_rate", r.spring_rate);
    kvn("rover.damping", r.damping);
    kvn("rover.spring_free_length", r.spring_free_length);
    kvn("rover.total_mass", r.total_mass);
    kvn("rover.front_static_load", r.front_static_load);
    kvn("rover.rear_static_load", r.rear_static_load);
    kvn("rover.unsprung_mass", r.unsprung_mass);
    kvn("rover.rocker_limit", r.rocker_limit);
    kvn("rover.gravity", r.gravity);
    kvn("rover.contact_stiffness", r.contact_stiffness);
    kvn("rover.contact_damping", r.contact_damping);
    kvn("rover.friction_regularization", r.friction_regularization);
    kvn("rover.timestep", r.timestep);
    kvn("contact.mu_soil", soil_friction);
    kvn("contact.mu_obstacle", obstacle_friction);
    kv("simulation.suspension", to_string(suspension));
    kvn("simulation.timeout", timeout);
    kvn("simulation.sigma_window", sigma_window);
    kvn("simulation.seed", static_cast<scalar_t>(seed));
    kva("sweep.speeds", sweep.speeds);
    kva("sweep.step_heights", sweep.step_heights);
    kva("sweep.slope_angles_deg", sweep.slope_angles_deg);
    kvn("sweep.rock_radius", sweep.rock_radius);
    kvn("sweep.outcrop_max_height", sweep.outcrop_max_height);
    kvn("sweep.outcrop_length", sweep.outcrop_length);
    kvn("sweep.outcrop_width", sweep.outcrop_width);
    kvn("sweep.slope_length", sweep.slope_length);
    kvs("sweep.modules", sweep.modules);
    kvs("sweep.modes", sweep.modes);
    kvn("sweep.trace_stride", sweep.trace_stride);
    // jobs and output.directory are deliberately excluded: they cannot
    // change the simulated results the hash identifies.
    return out.str();
}

std::string SimConfig::hash() const {
    const std::string dump = canonical_dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

} // namespace rover
