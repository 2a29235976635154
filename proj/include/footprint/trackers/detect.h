#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "footprint/common.h"
#include "footprint/parsers/manifest.h"
#include "footprint/trackers/signature_db.h"

namespace footprint::trackers {

// Libraries with at least one class name starting with one of their
// prefixes for `platform`. Case-sensitive.
std::set<std::string> match_trackers(const SignatureDb& db, const ClassNameSet& class_names, Platform platform);

// iOS: AdSupport / AdSupport.* / ASIdentifierManager present.
// Android: some class name has an IAdvertisingIdService segment.
bool detect_adid_access(const ClassNameSet& class_names, Platform platform);

enum class FlagState { kUnset, kEnabled, kDisabled };

std::string_view to_string(FlagState state);
FlagState parse_flag_state(std::string_view name);

struct FlagReport {
  FlagState state = FlagState::kUnset;
  // The app set the flag to its data-minimising value.
  bool minimising = false;

  bool operator==(const FlagReport&) const = default;
};

// library_id -> flag -> report, for every library in the database that has
// configuration flags.
struct SdkConfigReport {
  std::map<std::string, std::map<std::string, FlagReport>> libraries;

  bool operator==(const SdkConfigReport&) const = default;
};

// "true"/"false" metadata values set a flag; anything else (including
// unresolved resource references) leaves it unset. Flags of libraries not in
// `detected` are always unset.
SdkConfigReport evaluate_sdk_config(const SignatureDb& db, const parsers::ManifestData& manifest,
                                    const std::set<std::string>& detected, Platform platform);

// More than half of all class-name segments are a single character.
bool obfuscation_suspected(const ClassNameSet& class_names);

}  // namespace footprint::trackers
