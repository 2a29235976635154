#include "footprint/report/emit.h"

#include <cstdio>
#include <ctime>

#include "footprint/error.h"
#include "json_util.h"

namespace footprint::report {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json count_stats_json(const stats::CountStats& s) {
  return {{"n", s.n},           {"median", s.median},     {"mean", s.mean},         {"q1", s.q1},
          {"q3", s.q3},         {"gt_threshold", s.gt_threshold}, {"pct_gt", s.pct_gt}, {"pct_none", s.pct_none}};
}

ordered_json prevalence_json(const std::vector<Prevalence>& list) {
  ordered_json out = ordered_json::array();
  for (const auto& p : list) out.push_back({{"key", p.key}, {"apps", p.apps}, {"share", p.share}});
  return out;
}

std::string joined(const auto& items, auto render) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ';';
    out += render(item);
  }
  return out;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::set<std::string> string_set(const json_util::Reader& r, const char* key) {
  auto list = r.strings(key);
  return {list.begin(), list.end()};
}

bool boolean(const json_util::Reader& r, const char* key) {
  const auto& v = r.at(key);
  if (!v.is_boolean()) r.fail(std::string("\"") + key + "\" must be a boolean");
  return v.get<bool>();
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw Error(ErrorCode::kSchemaError, "unknown format \"" + std::string(name) + "\"");
}

ordered_json to_json(const PrivacyFootprint& f) {
  ordered_json j;
  j["app_id"] = f.app_id;
  j["platform"] = to_string(f.platform);
  j["category"] = to_string(f.category);
  j["title"] = f.title;
  j["cross_platform_peer"] = f.cross_platform_peer ? ordered_json(*f.cross_platform_peer) : ordered_json();
  j["tracker_libraries"] = f.tracker_libraries;
  j["companies"] = f.companies;
  j["root_companies"] = f.root_companies;
  j["countries"] = f.countries;
  j["permissions"] = {{"raw", f.permission_profile.raw},
                      {"dangerous", f.permission_profile.dangerous},
                      {"cross_platform_groups", f.permission_profile.cross_platform_groups}};
  j["adid_static"] = f.adid_static;
  j["adid_in_traffic"] = f.adid_in_traffic;
  j["traffic_analyzed"] = f.traffic_analyzed;
  ordered_json matches = ordered_json::array();
  for (const auto& m : f.pii_matches)
    matches.push_back({{"identifier_kind", to_string(m.kind)},
                       {"transform", to_string(m.transform)},
                       {"host", m.host},
                       {"location", to_string(m.location)}});
  j["pii_matches"] = std::move(matches);
  j["hosts"] = f.hosts;
  j["tracking_hosts"] = ordered_json::object();
  for (const auto& [host, company] : f.tracking_hosts) j["tracking_hosts"][host] = company;
  j["sdk_config"] = ordered_json::object();
  for (const auto& [lib, flags] : f.sdk_config.libraries) {
    ordered_json lj = ordered_json::object();
    for (const auto& [name, r] : flags) lj[name] = {{"state", trackers::to_string(r.state)}, {"minimising", r.minimising}};
    j["sdk_config"][lib] = std::move(lj);
  }
  j["obfuscation_suspected"] = f.obfuscation_suspected;
  return j;
}

PrivacyFootprint footprint_from_json(const json& j) {
  json_util::Reader r(j, "footprint");
  r.allow_only({"app_id", "platform", "category", "title", "cross_platform_peer", "tracker_libraries", "companies",
                "root_companies", "countries", "permissions", "adid_static", "adid_in_traffic", "traffic_analyzed",
                "pii_matches", "hosts", "tracking_hosts", "sdk_config", "obfuscation_suspected"});
  PrivacyFootprint f;
  f.app_id = r.string("app_id");
  f.platform = parse_platform(r.string("platform"));
  f.category = parse_category(r.string("category"));
  f.title = r.string("title");
  if (r.has("cross_platform_peer")) f.cross_platform_peer = r.string("cross_platform_peer");
  f.tracker_libraries = string_set(r, "tracker_libraries");
  f.companies = string_set(r, "companies");
  f.root_companies = string_set(r, "root_companies");
  f.countries = string_set(r, "countries");
  json_util::Reader perms(r.at("permissions"), "footprint permissions");
  perms.allow_only({"raw", "dangerous", "cross_platform_groups"});
  f.permission_profile.raw = string_set(perms, "raw");
  f.permission_profile.dangerous = string_set(perms, "dangerous");
  f.permission_profile.cross_platform_groups = string_set(perms, "cross_platform_groups");
  f.adid_static = boolean(r, "adid_static");
  f.adid_in_traffic = boolean(r, "adid_in_traffic");
  f.traffic_analyzed = boolean(r, "traffic_analyzed");
  const auto& matches = r.at("pii_matches");
  if (!matches.is_array()) r.fail("pii_matches must be an array");
  for (const auto& m : matches) {
    json_util::Reader mr(m, "pii match");
    mr.allow_only({"identifier_kind", "transform", "host", "location"});
    f.pii_matches.push_back({traffic::parse_identifier_kind(mr.string("identifier_kind")),
                             traffic::parse_transform(mr.string("transform")), mr.string("host"),
                             traffic::parse_location(mr.string("location"))});
  }
  f.hosts = string_set(r, "hosts");
  const auto& tracking = r.at("tracking_hosts");
  if (!tracking.is_object()) r.fail("tracking_hosts must be an object");
  for (const auto& [host, company] : tracking.items()) {
    if (!company.is_string()) r.fail("tracking_hosts values must be strings");
    f.tracking_hosts[host] = company.get<std::string>();
  }
  const auto& config = r.at("sdk_config");
  if (!config.is_object()) r.fail("sdk_config must be an object");
  for (const auto& [lib, flags] : config.items()) {
    if (!flags.is_object()) r.fail("sdk_config entries must be objects");
    auto& out = f.sdk_config.libraries[lib];
    for (const auto& [name, body] : flags.items()) {
      json_util::Reader fr(body, "sdk flag " + name);
      out[name] = {trackers::parse_flag_state(fr.string("state")), boolean(fr, "minimising")};
    }
  }
  f.obfuscation_suspected = boolean(r, "obfuscation_suspected");
  return f;
}

ordered_json to_json(const GroupSummary& s) {
  ordered_json j;
  j["group"] = to_string(s.group);
  j["platform"] = to_string(s.platform);
  j["total"] = s.total;
  j["mean_root_companies"] = s.mean_root_companies;
  j["mean_permissions"] = s.mean_permissions;
  j["mean_cross_platform_permissions"] = s.mean_cross_platform_permissions;
  j["location_share"] = s.location_share;
  j["adid_static_share"] = s.adid_static_share;
  j["adid_traffic_share"] = s.adid_traffic_share;
  j["library_counts"] = count_stats_json(s.library_counts);
  j["tracking_host_counts"] = count_stats_json(s.tracking_host_counts);
  j["root_company_counts"] = count_stats_json(s.root_company_counts);
  j["libraries"] = prevalence_json(s.libraries);
  j["tracking_hosts"] = prevalence_json(s.tracking_hosts);
  j["root_companies"] = prevalence_json(s.root_companies);
  j["countries"] = prevalence_json(s.countries);
  return j;
}

std::string emit_report(const Report& report, Format format) {
  if (report.footprints.empty()) throw Error(ErrorCode::kEmptyInput, "no footprints to report");
  if (format == Format::kCsv) {
    std::string out =
        "app_id,platform,category,title,cross_platform_peer,tracker_libraries,root_companies,countries,"
        "permissions,dangerous_permissions,cross_platform_groups,adid_static,adid_in_traffic,traffic_analyzed,"
        "pii_matches,hosts,tracking_hosts,obfuscation_suspected\n";
    auto same = [](const std::string& s) { return s; };
    for (const auto& f : report.footprints) {
      std::vector<std::string> row = {
          f.app_id,
          std::string(to_string(f.platform)),
          std::string(to_string(f.category)),
          f.title,
          f.cross_platform_peer.value_or(""),
          joined(f.tracker_libraries, same),
          joined(f.root_companies, same),
          joined(f.countries, same),
          joined(f.permission_profile.raw, same),
          joined(f.permission_profile.dangerous, same),
          joined(f.permission_profile.cross_platform_groups, same),
          flag(f.adid_static),
          flag(f.adid_in_traffic),
          flag(f.traffic_analyzed),
          joined(f.pii_matches,
                 [](const traffic::PiiMatch& m) {
                   return std::string(to_string(m.kind)) + ":" + std::string(to_string(m.transform)) + ":" +
                          m.host + ":" + std::string(to_string(m.location));
                 }),
          joined(f.hosts, same),
          joined(f.tracking_hosts, [](const auto& kv) { return kv.first + "=" + kv.second; }),
          flag(f.obfuscation_suspected)};
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
      out += '\n';
    }
    return out;
  }
  ordered_json j;
  j["version"] = kReportVersion;
  j["generated_at"] = report.generated_at;
  j["apps"] = ordered_json::array();
  for (const auto& f : report.footprints) j["apps"].push_back(to_json(f));
  if (!report.summaries.empty()) {
    j["groups"] = ordered_json::array();
    for (const auto& s : report.summaries) j["groups"].push_back(to_json(s));
  }
  return j.dump(2) + "\n";
}

std::string emit_summaries(const std::vector<GroupSummary>& summaries) {
  ordered_json j;
  j["groups"] = ordered_json::array();
  for (const auto& s : summaries) j["groups"].push_back(to_json(s));
  return j.dump(2) + "\n";
}

Report parse_report(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "footprint report");
  json_util::Reader r(doc, "footprint report");
  r.allow_only({"version", "generated_at", "apps", "groups"});
  if (r.string("version") != kReportVersion) r.fail("unsupported version \"" + r.string("version") + "\"");
  Report report;
  report.generated_at = r.string("generated_at");
  const auto& apps = r.at("apps");
  if (!apps.is_array()) r.fail("apps must be an array");
  for (const auto& a : apps) report.footprints.push_back(footprint_from_json(a));
  return report;
}

std::string format_summary_tables(const std::vector<GroupSummary>& summaries) {
  auto line = [](const char* label, const std::vector<std::string>& cells) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-28s", label);
    std::string out = buf;
    for (const auto& c : cells) {
      std::snprintf(buf, sizeof buf, "%-18s", c.c_str());
      out += buf;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  auto fmt = [](const char* pattern, auto... v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v...);
    return std::string(buf);
  };
  std::vector<std::string> platform, group, total, roots, perms, location, adid;
  for (const auto& s : summaries) {
    platform.emplace_back(s.platform == Platform::kAndroid ? "Android" : "iOS");
    group.emplace_back(s.group == Group::kAll ? "All" : s.group == Group::kCrossPlatform ? "Cross-Platform" : "Children");
    total.push_back(std::to_string(s.total));
    roots.push_back(fmt("%.1f", s.mean_root_companies));
    perms.push_back(fmt("%.1f (%.1f)", s.mean_permissions, s.mean_cross_platform_permissions));
    location.push_back(fmt("%.1f%%", 100 * s.location_share));
    adid.push_back(fmt("%.1f%% (%.1f%%)", 100 * s.adid_static_share, 100 * s.adid_traffic_share));
  }
  std::string out;
  out += line("Platform", platform);
  out += line("Category", group);
  out += line("Total Number", total);
  out += line("Root Tracker companies", roots);
  out += line("Permissions (Cross-Pltf.)", perms);
  out += line("Location Permission", location);
  out += line("AdId access (in traffic)", adid);

  for (const auto& s : summaries) {
    out += "\n[" + std::string(to_string(s.platform)) + " / " + std::string(to_string(s.group)) + "]\n";
    out += line("", {"Median", "Mean", "Q1", "Q3", "Count >10", "None"});
    auto stats_row = [&](const char* label, const stats::CountStats& c) {
      out += line(label, {fmt("%.1f", c.median), fmt("%.1f", c.mean), fmt("%.1f", c.q1), fmt("%.1f", c.q3),
                          fmt("%.1f%%", 100 * c.pct_gt), fmt("%.1f%%", 100 * c.pct_none)});
    };
    stats_row("Tracker libraries", s.library_counts);
    stats_row("Tracking hosts", s.tracking_host_counts);
    stats_row("Root companies", s.root_company_counts);
    auto top = [&](const char* label, const std::vector<Prevalence>& list) {
      out += std::string(label) + ":";
      std::size_t shown = 0;
      for (const auto& p : list) {
        if (shown++ == 10) break;
        out += " " + p.key + fmt(" (%.1f%%)", 100 * p.share);
      }
      out += "\n";
    };
    top("  top libraries", s.libraries);
    top("  top tracking hosts", s.tracking_hosts);
    top("  top root companies", s.root_companies);
    top("  countries", s.countries);
  }
  return out;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace footprint::report
