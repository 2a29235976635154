#include "footprint/trackers/detect.h"

#include "footprint/error.h"

namespace footprint::trackers {

std::set<std::string> match_trackers(const SignatureDb& db, const ClassNameSet& class_names, Platform platform) {
  std::set<std::string> found;
  for (const auto& lib : db.libraries()) {
    const auto& prefixes = lib.prefixes(platform);
    if (prefixes.empty()) continue;
    for (const auto& prefix : prefixes) {
      // Every name starting with `prefix` sorts at or after it.
      auto it = class_names.lower_bound(prefix);
      if (it != class_names.end() && it->starts_with(prefix)) {
        found.insert(lib.library_id);
        break;
      }
    }
  }
  return found;
}

bool detect_adid_access(const ClassNameSet& class_names, Platform platform) {
  if (platform == Platform::kIos) {
    if (class_names.count("AdSupport") || class_names.count("ASIdentifierManager")) return true;
    auto it = class_names.lower_bound("AdSupport.");
    return it != class_names.end() && it->starts_with("AdSupport.");
  }
  constexpr std::string_view kInterface = "IAdvertisingIdService";
  for (const auto& name : class_names) {
    for (auto pos = name.find(kInterface); pos != std::string::npos; pos = name.find(kInterface, pos + 1)) {
      auto end = pos + kInterface.size();
      bool starts = pos == 0 || name[pos - 1] == '.' || name[pos - 1] == '$';
      bool ends = end == name.size() || name[end] == '.' || name[end] == '$';
      if (starts && ends) return true;
    }
  }
  return false;
}

std::string_view to_string(FlagState state) {
  switch (state) {
    case FlagState::kEnabled:
      return "enabled";
    case FlagState::kDisabled:
      return "disabled";
    case FlagState::kUnset:
      break;
  }
  return "unset";
}

FlagState parse_flag_state(std::string_view name) {
  if (name == "enabled") return FlagState::kEnabled;
  if (name == "disabled") return FlagState::kDisabled;
  if (name == "unset") return FlagState::kUnset;
  throw Error(ErrorCode::kSchemaError, "unknown flag state \"" + std::string(name) + "\"");
}

SdkConfigReport evaluate_sdk_config(const SignatureDb& db, const parsers::ManifestData& manifest,
                                    const std::set<std::string>& detected, Platform platform) {
  SdkConfigReport report;
  for (const auto& lib : db.libraries()) {
    if (lib.config_flags.empty()) continue;
    auto& flags = report.libraries[lib.library_id];
    for (const auto& flag : lib.config_flags) {
      FlagReport r;
      const std::string& key = flag.key(platform);
      auto it = key.empty() ? manifest.metadata.end() : manifest.metadata.find(key);
      if (detected.count(lib.library_id) && it != manifest.metadata.end() && !manifest.unresolved.count(key)) {
        std::string value = to_lower_ascii(trim(it->second));
        if (value == "true" || value == "false") {
          r.state = value == "true" ? FlagState::kEnabled : FlagState::kDisabled;
          r.minimising = value == flag.minimising_value;
        }
      }
      flags[flag.flag] = r;
    }
  }
  return report;
}

bool obfuscation_suspected(const ClassNameSet& class_names) {
  std::size_t segments = 0, single = 0;
  for (const auto& name : class_names) {
    std::size_t start = 0;
    while (start <= name.size()) {
      auto end = name.find_first_of(".$", start);
      if (end == std::string::npos) end = name.size();
      if (end > start) {
        ++segments;
        if (end - start == 1) ++single;
      }
      start = end + 1;
    }
  }
  return segments > 0 && single * 2 > segments;
}

}  // namespace footprint::trackers
