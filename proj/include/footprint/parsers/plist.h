#pragma once

#include "footprint/common.h"
#include "footprint/parsers/manifest.h"

namespace footprint::parsers {

// Info.plist as ManifestData: keys ending in "UsageDescription" become
// permissions; top-level string, boolean, integer, real and date values go
// to metadata (dates as "YYYY-MM-DDTHH:MM:SSZ"); CFBundleIdentifier is the
// package name. Nested containers and data blobs are not recorded.
//
// Accepts "bplist00" binary plists and XML plists. Throws BadTrailer
// (binary structure), MalformedXml or UnsupportedObjectType.
ManifestData parse_plist(ByteView bytes);

}  // namespace footprint::parsers
