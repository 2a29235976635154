#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "footprint/common.h"
#include "footprint/parsers/manifest.h"

namespace footprint::report {

inline constexpr std::string_view kLocationGroup = "Location";

struct PermissionTables {
  std::set<std::string> android_dangerous;
  // group -> platform -> permission identifiers
  std::map<std::string, std::map<Platform, std::set<std::string>>> groups;

  // Throws SchemaError.
  static PermissionTables load(std::string_view json);
  static PermissionTables load_file(const std::filesystem::path& path);
};

struct PermissionProfile {
  std::set<std::string> raw;
  std::set<std::string> dangerous;
  std::set<std::string> cross_platform_groups;

  bool operator==(const PermissionProfile&) const = default;
};

// Every iOS permission is opt-in, so dangerous == raw there. Unknown
// permissions stay in raw only.
PermissionProfile classify_permissions(const parsers::ManifestData& manifest, Platform platform,
                                       const PermissionTables& tables);

}  // namespace footprint::report
