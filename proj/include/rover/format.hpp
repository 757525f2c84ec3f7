// Deterministic number/CSV formatting shared by the writers.
#pragma once

#include <rover/types.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace rover {

/// Shortest round-trippable-ish representation, stable across runs.
inline std::string format_number(scalar_t value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

inline std::string format_fixed(scalar_t value, int digits) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

/// Splits one CSV line; no quoting support (none of our fields need it).
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

} // namespace rover
