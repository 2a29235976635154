#include "footprint/trackers/signature_db.h"

#include <algorithm>

#include "footprint/error.h"
#include "json_util.h"

namespace footprint::trackers {
namespace {

using json_util::Reader;

std::vector<std::string> normalize_prefixes(std::vector<std::string> prefixes, const std::string& library_id) {
  for (const auto& p : prefixes)
    if (trim(p).empty()) throw Error(ErrorCode::kEmptyPrefix, "library " + library_id);
  // After sorting, a prefix of another prefix sorts directly before the
  // first string it covers.
  std::sort(prefixes.begin(), prefixes.end());
  std::vector<std::string> out;
  for (auto& p : prefixes) {
    if (!out.empty() && p.starts_with(out.back())) continue;
    out.push_back(std::move(p));
  }
  return out;
}

ConfigFlag read_flag(const nlohmann::json& j, const std::string& context) {
  Reader r(j, context);
  r.allow_only({"flag", "android_key", "ios_key", "minimising_value"});
  ConfigFlag f{r.string("flag"), r.string_or("android_key", ""), r.string_or("ios_key", ""),
               r.string("minimising_value")};
  if (f.flag.empty()) r.fail("empty flag name");
  if (f.minimising_value != "true" && f.minimising_value != "false")
    r.fail("minimising_value must be \"true\" or \"false\"");
  return f;
}

TrackerLibrary read_library(const nlohmann::json& j, std::size_t position) {
  Reader r(j, "signature entry " + std::to_string(position));
  r.allow_only({"library_id", "display_name", "company_id", "purposes", "android_prefixes", "ios_prefixes",
                "config_flags", "source", "note"});
  TrackerLibrary lib;
  lib.library_id = r.string("library_id");
  if (lib.library_id.empty()) r.fail("empty library_id");
  Reader named(j, "library " + lib.library_id);
  lib.display_name = named.string("display_name");
  lib.company_id = named.string("company_id");
  if (lib.company_id.empty()) named.fail("empty company_id");
  for (auto& p : named.strings("purposes")) {
    if (!known_purposes().count(p)) named.fail("unknown purpose \"" + p + "\"");
    lib.purposes.insert(std::move(p));
  }
  lib.android_prefixes = normalize_prefixes(named.has("android_prefixes") ? named.strings("android_prefixes")
                                                                          : std::vector<std::string>{},
                                            lib.library_id);
  lib.ios_prefixes = normalize_prefixes(
      named.has("ios_prefixes") ? named.strings("ios_prefixes") : std::vector<std::string>{}, lib.library_id);
  if (lib.android_prefixes.empty() && lib.ios_prefixes.empty()) named.fail("no prefixes for either platform");
  if (named.has("config_flags")) {
    const auto& flags = named.at("config_flags");
    if (!flags.is_array()) named.fail("config_flags must be an array");
    for (const auto& f : flags) lib.config_flags.push_back(read_flag(f, "library " + lib.library_id));
  }
  lib.source = named.string_or("source", "");
  return lib;
}

}  // namespace

SignatureDb SignatureDb::load(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "signature database");
  if (!doc.is_array()) throw Error(ErrorCode::kSchemaError, "signature database must be a JSON array");
  SignatureDb db;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto lib = read_library(doc[i], i);
    if (db.index_.count(lib.library_id)) throw Error(ErrorCode::kDuplicateLibraryId, lib.library_id);
    db.index_.emplace(lib.library_id, db.libraries_.size());
    db.libraries_.push_back(std::move(lib));
  }
  return db;
}

SignatureDb SignatureDb::load_file(const std::filesystem::path& path) { return load(read_text_file(path)); }

const TrackerLibrary* SignatureDb::find(std::string_view library_id) const {
  auto it = index_.find(library_id);
  return it == index_.end() ? nullptr : &libraries_[it->second];
}

std::vector<TrackerSignature> SignatureDb::signatures(Platform platform) const {
  std::vector<TrackerSignature> out;
  for (const auto& lib : libraries_)
    if (!lib.prefixes(platform).empty()) out.push_back({lib.library_id, platform, lib.prefixes(platform)});
  return out;
}

bool SignatureDb::covers(Platform platform, std::string_view package_prefix) const {
  std::string probe(package_prefix);
  if (platform == Platform::kAndroid) probe += '.';
  for (const auto& lib : libraries_)
    for (const auto& p : lib.prefixes(platform))
      if (probe.starts_with(p)) return true;
  return false;
}

}  // namespace footprint::trackers
