#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwrelay/acoustics.hpp"

namespace uwrelay::cli {

/// Bad command-line or config input; exit status 2.
class UsageError : public std::runtime_error {
   public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// `start:stop:step`, stop included when the step lands on it (to within
/// 1e-9 of a step). A bare number is a one-element range.
std::vector<double> parse_range(const std::string& text);

/// Comma-separated values, each of which may itself be a range.
std::vector<double> parse_list(const std::string& text);

/// Settings shared by every subcommand.
struct RunConfig {
    Environment env;
    double packet_bits = 2048;  // 256 bytes
    double alpha = 1.0;
    std::string format = "json";
    std::optional<std::filesystem::path> out;
};

/// Flat `key = value` lines; `#` starts a comment. Keys: k, s, w, c, eta, L,
/// alpha, format, out.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies config entries whose key is not in `overridden` (keys set on the
/// command line win).
void apply_config(const std::map<std::string, std::string>& entries,
                  const std::vector<std::string>& overridden, RunConfig& cfg);

double parse_number(const std::string& key, const std::string& text);

}  // namespace uwrelay::cli
