#pragma once

#include <string_view>

#include "footprint/common.h"

namespace footprint::parsers {

// One class name per line; blank lines and lines starting with '#' are
// ignored, names are trimmed and deduplicated. Never fails.
ClassNameSet ingest_class_dump(std::string_view text);

}  // namespace footprint::parsers
