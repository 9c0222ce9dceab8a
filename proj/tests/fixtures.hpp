#pragma once
// Access to the frozen oracle values.

#include <fstream>
#include "json.hpp"
#include <string>

namespace fixtures {

inline const nlohmann::json& frozen() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(DHA_FIXTURES) + "/oracle_frozen.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

}  // namespace fixtures
