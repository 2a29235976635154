#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "footprint/report/footprint.h"
#include "footprint/traffic/pii.h"

namespace footprint::report {

// One device profile per platform; either may be absent.
struct DeviceProfiles {
  std::optional<traffic::DeviceProfile> android;
  std::optional<traffic::DeviceProfile> ios;

  const traffic::DeviceProfile* for_platform(Platform platform) const;
};

// Either a single profile (used for both platforms) or
// {"android": {...}, "ios": {...}}. Throws SchemaError.
DeviceProfiles parse_device_profiles(std::string_view json);

struct BatchOptions {
  DeviceProfiles profiles;
  unsigned jobs = 0;  // 0: hardware concurrency
  double match_threshold = 0.95;
};

struct AppFailure {
  std::string package;  // file name
  std::string message;
};

struct BatchResult {
  std::vector<PrivacyFootprint> footprints;  // sorted by app_id, then platform
  std::vector<AppFailure> failures;          // sorted by package
};

// Directory layout, per package <stem>.apk / <stem>.ipa:
//   <stem>.meta.json    {app_id, platform, title, category} (optional)
//   <stem>.classes.txt  class dump, merged into the class names (optional)
//   <stem>.har or <app_id>.har   captured traffic (optional)
// Throws IoError when the directory cannot be listed; per-app problems are
// reported in failures.
BatchResult run_batch(const std::filesystem::path& dir, const Databases& db, const BatchOptions& options);

// Loads one package with its sidecars as run_batch does.
PrivacyFootprint scan_package(const std::filesystem::path& package, const Databases& db,
                              const DeviceProfiles& profiles,
                              const std::optional<std::filesystem::path>& har = std::nullopt);

// Sets cross_platform_peer from title + app_id text similarity.
void link_cross_platform(std::vector<PrivacyFootprint>& footprints, double threshold);

}  // namespace footprint::report
