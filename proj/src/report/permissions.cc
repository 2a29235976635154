#include "footprint/report/permissions.h"

#include "footprint/error.h"
#include "json_util.h"

namespace footprint::report {

PermissionTables PermissionTables::load(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "permission tables");
  json_util::Reader r(doc, "permission tables");
  r.allow_only({"android_dangerous", "cross_platform_groups", "notes"});
  PermissionTables t;
  for (auto& p : r.strings("android_dangerous")) t.android_dangerous.insert(std::move(p));
  const auto& groups = r.at("cross_platform_groups");
  if (!groups.is_object()) r.fail("cross_platform_groups must be an object");
  for (const auto& [name, body] : groups.items()) {
    json_util::Reader g(body, "permission group " + name);
    g.allow_only({"android", "ios"});
    auto& entry = t.groups[name];
    for (auto& p : g.strings("android")) entry[Platform::kAndroid].insert(std::move(p));
    for (auto& p : g.strings("ios")) entry[Platform::kIos].insert(std::move(p));
  }
  return t;
}

PermissionTables PermissionTables::load_file(const std::filesystem::path& path) {
  return load(read_text_file(path));
}

PermissionProfile classify_permissions(const parsers::ManifestData& manifest, Platform platform,
                                       const PermissionTables& tables) {
  PermissionProfile p;
  for (const auto& perm : manifest.permissions) {
    std::string id(trim(perm));
    if (id.empty()) continue;
    p.raw.insert(id);
    if (platform == Platform::kIos || tables.android_dangerous.count(id)) p.dangerous.insert(id);
    for (const auto& [group, members] : tables.groups) {
      auto it = members.find(platform);
      if (it != members.end() && it->second.count(id)) p.cross_platform_groups.insert(group);
    }
  }
  return p;
}

}  // namespace footprint::report
