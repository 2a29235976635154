#pragma once

#include <map>
#include <set>
#include <string>

#include "footprint/common.h"

namespace footprint::parsers {

struct ManifestData {
  // Android permission names or iOS usage-description keys; trimmed, nonempty.
  std::set<std::string> permissions;
  // Android meta-data entries, iOS top-level plist scalars. Booleans are
  // rendered "true"/"false".
  std::map<std::string, std::string> metadata;
  std::string package_name;
  // metadata keys whose value is an unresolved resource reference ("@...").
  std::set<std::string> unresolved;

  bool operator==(const ManifestData&) const = default;
};

// Accepts compiled binary XML (first chunk type 0x0003) or plain-text XML.
// Throws BadChunkHeader, StringPoolCorrupt or NotXml.
ManifestData parse_android_manifest(ByteView bytes);

// Framework resource ids of the attributes the manifest reader cares about;
// used when an obfuscated binary manifest strips the attribute name strings.
inline constexpr std::uint32_t kAttrName = 0x01010003;
inline constexpr std::uint32_t kAttrValue = 0x01010024;
inline constexpr std::uint32_t kAttrResource = 0x01010025;

}  // namespace footprint::parsers
