#include "uwrelay/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uwrelay::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) {
        parts.push_back(trim(part));
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

}  // namespace

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError(key + ": not a number: '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) {
        throw UsageError(key + ": not a finite number: '" + text + "'");
    }
    return v;
}

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        return {parse_number("range", parts[0])};
    }
    if (parts.size() != 3) {
        throw UsageError("range must be start:stop:step, got '" + text + "'");
    }
    const double start = parse_number("range start", parts[0]);
    const double stop = parse_number("range stop", parts[1]);
    const double step = parse_number("range step", parts[2]);
    if (!(step > 0.0)) {
        throw UsageError("range step must be > 0 in '" + text + "'");
    }
    if (stop < start) {
        throw UsageError("empty range '" + text + "'");
    }
    const double span = (stop - start) / step;
    if (span > 1e7) {
        throw UsageError("range '" + text + "' has too many points");
    }
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    if (std::abs(out.back() - stop) <= 1e-9 * step) {
        out.back() = stop;
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) {
            throw UsageError("empty element in list '" + text + "'");
        }
        const auto r = parse_range(part);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (out.empty()) {
        throw UsageError("empty list");
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file " + path.string());
    }
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return entries;
}

void apply_config(const std::map<std::string, std::string>& entries,
                  const std::vector<std::string>& overridden, RunConfig& cfg) {
    for (const auto& [key, value] : entries) {
        if (std::find(overridden.begin(), overridden.end(), key) != overridden.end()) {
            continue;
        }
        if (key == "k") {
            cfg.env.k = parse_number(key, value);
        } else if (key == "s") {
            cfg.env.s = parse_number(key, value);
        } else if (key == "w") {
            cfg.env.w = parse_number(key, value);
        } else if (key == "c") {
            cfg.env.c = parse_number(key, value);
        } else if (key == "eta") {
            cfg.env.eta = parse_number(key, value);
        } else if (key == "L") {
            cfg.packet_bits = parse_number(key, value);
        } else if (key == "alpha") {
            cfg.alpha = parse_number(key, value);
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
}

}  // namespace uwrelay::cli
