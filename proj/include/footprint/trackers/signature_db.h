#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/common.h"

namespace footprint::trackers {

// A privacy-relevant SDK setting read from the manifest / Info.plist.
struct ConfigFlag {
  std::string flag;
  std::string android_key;
  std::string ios_key;
  // Value ("true"/"false") that turns the data collection down.
  std::string minimising_value;

  const std::string& key(Platform platform) const {
    return platform == Platform::kAndroid ? android_key : ios_key;
  }
};

struct TrackerLibrary {
  std::string library_id;
  std::string display_name;
  std::string company_id;
  std::set<std::string> purposes;
  std::vector<std::string> android_prefixes;
  std::vector<std::string> ios_prefixes;
  std::vector<ConfigFlag> config_flags;
  std::string source;

  const std::vector<std::string>& prefixes(Platform platform) const {
    return platform == Platform::kAndroid ? android_prefixes : ios_prefixes;
  }
};

struct TrackerSignature {
  std::string library_id;
  Platform platform;
  std::vector<std::string> prefixes;
};

inline const std::set<std::string>& known_purposes() {
  static const std::set<std::string> purposes = {"advertising", "analytics", "attribution", "crash-reporting",
                                                 "social"};
  return purposes;
}

class SignatureDb {
 public:
  // Throws SchemaError, DuplicateLibraryId or EmptyPrefix. Nested prefixes
  // of one library and platform collapse to the shortest.
  static SignatureDb load(std::string_view json);
  static SignatureDb load_file(const std::filesystem::path& path);

  const std::vector<TrackerLibrary>& libraries() const { return libraries_; }
  const TrackerLibrary* find(std::string_view library_id) const;
  std::vector<TrackerSignature> signatures(Platform platform) const;

  // True when every class under `package_prefix` would already match a
  // signature. Android prefixes are package names without the trailing dot.
  bool covers(Platform platform, std::string_view package_prefix) const;

 private:
  std::vector<TrackerLibrary> libraries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace footprint::trackers
