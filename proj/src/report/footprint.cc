#include "footprint/report/footprint.h"

#include "footprint/error.h"

namespace footprint::report {

std::filesystem::path default_data_dir() { return FOOTPRINT_DATA_DIR; }

Databases Databases::load(const std::filesystem::path& signatures, const std::filesystem::path& companies,
                          const std::filesystem::path& permissions) {
  Databases db{trackers::SignatureDb::load_file(signatures), companies::CompanyGraph::load_file(companies),
               PermissionTables::load_file(permissions)};
  for (const auto& lib : db.signatures.libraries())
    if (!db.companies.find(lib.company_id))
      throw Error(ErrorCode::kUnknownCompany, "library " + lib.library_id + " names company " + lib.company_id);
  return db;
}

Databases Databases::load_default() {
  auto dir = default_data_dir();
  return load(dir / "signatures.json", dir / "companies.json", dir / "permissions.json");
}

PrivacyFootprint build_footprint(const parsers::AppPackage& pkg, const std::set<std::string>& trackers,
                                 bool adid_static, const trackers::SdkConfigReport& sdk_config,
                                 const TrafficResults* traffic, const Databases& db) {
  if (traffic && traffic->app_id != pkg.app_id)
    throw Error(ErrorCode::kInconsistentAppId, "traffic for " + traffic->app_id + " given for " + pkg.app_id);
  PrivacyFootprint f;
  f.app_id = pkg.app_id;
  f.platform = pkg.platform;
  f.category = pkg.category;
  f.title = pkg.title;
  f.tracker_libraries = trackers;
  f.permission_profile = classify_permissions(pkg.manifest, pkg.platform, db.permissions);
  f.adid_static = adid_static;
  f.sdk_config = sdk_config;
  f.obfuscation_suspected = trackers::obfuscation_suspected(pkg.class_names);
  for (const auto& id : trackers) {
    const auto* lib = db.signatures.find(id);
    if (!lib) throw Error(ErrorCode::kSchemaError, "unknown library " + id);
    f.companies.insert(lib->company_id);
  }
  if (traffic) {
    f.traffic_analyzed = true;
    f.pii_matches = traffic->pii_matches;
    f.hosts = traffic->hosts.all_hosts;
    f.tracking_hosts = traffic->hosts.tracking_hosts;
    for (const auto& [host, company] : f.tracking_hosts) f.companies.insert(company);
    for (const auto& m : f.pii_matches)
      if (m.kind == traffic::IdentifierKind::kAdId) f.adid_in_traffic = true;
  }
  for (const auto& c : f.companies) f.root_companies.insert(db.companies.resolve_root(c).company_id);
  std::set<std::string> involved = f.companies;
  involved.insert(f.root_companies.begin(), f.root_companies.end());
  f.countries = db.companies.jurisdictions(involved, true);
  return f;
}

PrivacyFootprint analyze_app(const parsers::AppPackage& pkg, const traffic::TrafficCapture* capture,
                             const traffic::DeviceProfile* profile, const Databases& db) {
  auto libs = trackers::match_trackers(db.signatures, pkg.class_names, pkg.platform);
  bool adid = trackers::detect_adid_access(pkg.class_names, pkg.platform);
  auto config = trackers::evaluate_sdk_config(db.signatures, pkg.manifest, libs, pkg.platform);
  std::optional<TrafficResults> results;
  if (capture) {
    results.emplace();
    results->app_id = capture->app_id.empty() ? pkg.app_id : capture->app_id;
    results->hosts = traffic::classify_hosts(*capture, db.companies.tracking_domains());
    if (profile) results->pii_matches = traffic::scan_capture(*capture, traffic::build_needles(*profile));
  }
  return build_footprint(pkg, libs, adid, config, results ? &*results : nullptr, db);
}

}  // namespace footprint::report
