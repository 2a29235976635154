#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "footprint/common.h"
#include "json.hpp"

namespace footprint::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(FOOTPRINT_FIXTURE_DIR) / relative;
}

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(FOOTPRINT_DATA_DIR) / relative;
}

inline Bytes fixture_bytes(const std::string& relative) {
  return read_file(fixture_path(relative));
}

inline nlohmann::json fixture_json(const std::string& relative) {
  return nlohmann::json::parse(read_text_file(fixture_path(relative)));
}

inline std::set<std::string> json_string_set(const nlohmann::json& array) {
  return array.get<std::set<std::string>>();
}

}  // namespace footprint::testing
