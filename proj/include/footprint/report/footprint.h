#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "footprint/common.h"
#include "footprint/companies/company_graph.h"
#include "footprint/parsers/app_package.h"
#include "footprint/report/permissions.h"
#include "footprint/traffic/hosts.h"
#include "footprint/traffic/pii.h"
#include "footprint/trackers/detect.h"
#include "footprint/trackers/signature_db.h"

namespace footprint::report {

struct PrivacyFootprint {
  std::string app_id;
  Platform platform = Platform::kAndroid;
  Category category = Category::kGeneral;
  std::string title;
  // app_id of the matching app on the other platform, when one was found.
  std::optional<std::string> cross_platform_peer;
  std::set<std::string> tracker_libraries;
  // Owners of the detected libraries and tracking hosts, before rolling up.
  std::set<std::string> companies;
  std::set<std::string> root_companies;
  PermissionProfile permission_profile;
  bool adid_static = false;
  bool adid_in_traffic = false;
  // A capture was available for the app.
  bool traffic_analyzed = false;
  std::vector<traffic::PiiMatch> pii_matches;
  std::set<std::string> hosts;
  std::map<std::string, std::string> tracking_hosts;
  std::set<std::string> countries;
  trackers::SdkConfigReport sdk_config;
  bool obfuscation_suspected = false;

  bool operator==(const PrivacyFootprint&) const = default;
};

struct TrafficResults {
  std::string app_id;
  std::vector<traffic::PiiMatch> pii_matches;
  traffic::HostClassification hosts;
};

// The databases every analysis step reads. Immutable once loaded.
struct Databases {
  trackers::SignatureDb signatures;
  companies::CompanyGraph companies;
  PermissionTables permissions;

  // Throws the loaders' errors, or UnknownCompany when a library names a
  // company missing from the graph.
  static Databases load(const std::filesystem::path& signatures, const std::filesystem::path& companies,
                        const std::filesystem::path& permissions);
  // The files shipped in the data directory.
  static Databases load_default();
};

std::filesystem::path default_data_dir();

// Throws InconsistentAppId when `traffic` belongs to another app.
PrivacyFootprint build_footprint(const parsers::AppPackage& pkg, const std::set<std::string>& trackers,
                                 bool adid_static, const trackers::SdkConfigReport& sdk_config,
                                 const TrafficResults* traffic, const Databases& db);

// Runs every analyzer on one package. `capture` and `profile` are optional;
// without a profile only hosts are classified.
PrivacyFootprint analyze_app(const parsers::AppPackage& pkg, const traffic::TrafficCapture* capture,
                             const traffic::DeviceProfile* profile, const Databases& db);

}  // namespace footprint::report
