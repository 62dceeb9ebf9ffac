#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hrg {

// Bad user input: unknown preset, malformed config, invalid parameter.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace io {

// Shortest decimal form that round-trips a double exactly.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Splits one CSV line on commas; no quoting (none of our formats need it).
std::vector<std::string> split_csv(const std::string& line);

double parse_double(const std::string& s);
long long parse_int(const std::string& s);

}  // namespace io
}  // namespace hrg
