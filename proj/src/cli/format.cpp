#include "uwrelay/cli/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace uwrelay::cli {

namespace {

std::string printf_double(const char* fmt, int precision, double v) {
    char buf[512];
    const int n = std::snprintf(buf, sizeof buf, fmt, precision, v);
    if (n < 0 || n >= static_cast<int>(sizeof buf)) {
        throw std::runtime_error("number does not fit the output buffer");
    }
    return buf;
}

void trim_fraction(std::string& s) {
    if (s.find('.') == std::string::npos) {
        return;
    }
    while (s.back() == '0') {
        s.pop_back();
    }
    if (s.back() == '.') {
        s.pop_back();
    }
}

void emit(const Json& v, int depth, std::string& out) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close(2 * static_cast<std::size_t>(depth), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            emit(it.value(), depth + 1, out);
        }
        out += "\n" + close + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) {
                out += ",\n";
            }
            out += pad;
            emit(v[i], depth + 1, out);
        }
        out += "\n" + close + "]";
    } else if (v.is_number_float()) {
        out += format_json_number(v.get<double>());
    } else {
        out += v.dump();
    }
}

std::string csv_cell(const Json& v) {
    if (v.is_number_float()) {
        return format_csv_number(v.get<double>());
    }
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
            throw std::invalid_argument("CSV cell needs quoting: " + s);
        }
        return s;
    }
    return v.dump();
}

Json parse_cell(const std::string& s) {
    if (s.empty()) {
        return s;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        return s;
    }
    if (s.find_first_of(".eEn") == std::string::npos) {
        return std::strtoll(s.c_str(), nullptr, 10);
    }
    return v;
}

}  // namespace

std::string format_csv_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    return printf_double("%.*g", 12, v);
}

std::string format_json_number(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("JSON has no representation for inf or nan");
    }
    if (v == 0.0) {
        return "0";
    }
    if (std::abs(v) >= 1e6) {
        return printf_double("%.*g", 12, v);
    }
    // exponent after rounding to 12 digits
    const std::string sci = printf_double("%.*e", 11, v);
    const int exp10 = std::atoi(sci.c_str() + sci.find('e') + 1);
    std::string s = printf_double("%.*f", exp10 < 11 ? 11 - exp10 : 0, v);
    trim_fraction(s);
    return s;
}

std::string dump_json(const Json& doc) {
    std::string out;
    emit(doc, 0, out);
    out += '\n';
    return out;
}

std::string dump_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += (i ? "," : "") + table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("CSV row width differs from the header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (header) {
            table.header = cells;
            header = false;
            continue;
        }
        std::vector<Json> row;
        for (const auto& c : cells) {
            row.push_back(parse_cell(c));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace uwrelay::cli
