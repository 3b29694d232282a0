#pragma once

// Canonical text output: CSV with 12 significant digits, JSON with stable key
// order and plain decimal numbers. Re-parsing and re-emitting either format
// reproduces the same bytes.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace uwrelay::cli {

using Json = nlohmann::ordered_json;

/// %.12g.
std::string format_csv_number(double v);

/// 12 significant digits, never in exponent form below 1e6 in magnitude.
std::string format_json_number(double v);

/// Two-space indented JSON followed by a newline.
std::string dump_json(const Json& doc);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<Json>> rows;  // numbers or strings
};

std::string dump_csv(const CsvTable& table);

/// Parses text produced by dump_csv. Cells that read fully as numbers come
/// back as numbers.
CsvTable parse_csv(const std::string& text);

}  // namespace uwrelay::cli
