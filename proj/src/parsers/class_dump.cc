#include "footprint/parsers/class_dump.h"

namespace footprint::parsers {

ClassNameSet ingest_class_dump(std::string_view text) {
  ClassNameSet names;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    names.emplace(line);
  }
  return names;
}

}  // namespace footprint::parsers
