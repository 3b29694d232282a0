#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) {
    return std::string(UWRELAY_TEST_DATA) + "/" + name;
}

inline nlohmann::json oracle_values() {
    std::ifstream in(data_path("oracle_values.json"));
    return nlohmann::json::parse(in);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testsupport
