#include "footprint/report/summary.h"

#include <algorithm>
#include <map>

#include "footprint/error.h"

namespace footprint::report {
namespace {

bool in_group(const PrivacyFootprint& f, Group group) {
  switch (group) {
    case Group::kCrossPlatform:
      return f.cross_platform_peer.has_value();
    case Group::kChildren:
      return f.category == Category::kChildren;
    case Group::kAll:
      break;
  }
  return true;
}

std::vector<Prevalence> rank(const std::map<std::string, std::size_t>& counts, std::size_t total) {
  std::vector<Prevalence> out;
  for (const auto& [key, apps] : counts)
    out.push_back({key, apps, static_cast<double>(apps) / static_cast<double>(total)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.apps > b.apps; });
  return out;
}

template <typename Container>
void count_keys(const Container& keys, std::map<std::string, std::size_t>& counts) {
  for (const auto& k : keys) {
    if constexpr (requires { k.first; })
      ++counts[k.first];
    else
      ++counts[k];
  }
}

double mean_of(const std::vector<const PrivacyFootprint*>& apps, auto size_of) {
  double sum = 0;
  for (const auto* f : apps) sum += static_cast<double>(size_of(*f));
  return sum / static_cast<double>(apps.size());
}

double share_of(const std::vector<const PrivacyFootprint*>& apps, auto pred) {
  auto n = std::count_if(apps.begin(), apps.end(), [&](const auto* f) { return pred(*f); });
  return static_cast<double>(n) / static_cast<double>(apps.size());
}

}  // namespace

std::string_view to_string(Group group) {
  switch (group) {
    case Group::kCrossPlatform:
      return "cross_platform";
    case Group::kChildren:
      return "children";
    case Group::kAll:
      break;
  }
  return "all";
}

Group parse_group(std::string_view name) {
  for (auto g : {Group::kAll, Group::kCrossPlatform, Group::kChildren})
    if (to_string(g) == name) return g;
  throw Error(ErrorCode::kSchemaError, "unknown group \"" + std::string(name) + "\"");
}

GroupSummary summarize_group(const std::vector<PrivacyFootprint>& footprints, GroupSelector selector) {
  std::vector<const PrivacyFootprint*> corpus, apps;
  for (const auto& f : footprints) {
    if (f.platform != selector.platform) continue;
    corpus.push_back(&f);
    if (in_group(f, selector.group)) apps.push_back(&f);
  }
  if (apps.empty())
    throw Error(ErrorCode::kEmptyGroup, std::string(to_string(selector.group)) + " apps on " +
                                            std::string(to_string(selector.platform)));

  GroupSummary s;
  s.group = selector.group;
  s.platform = selector.platform;
  s.total = apps.size();
  s.mean_root_companies = mean_of(apps, [](const auto& f) { return f.root_companies.size(); });
  s.mean_permissions = mean_of(apps, [](const auto& f) { return f.permission_profile.raw.size(); });
  s.mean_cross_platform_permissions =
      mean_of(apps, [](const auto& f) { return f.permission_profile.cross_platform_groups.size(); });
  s.location_share = share_of(
      apps, [](const auto& f) { return f.permission_profile.cross_platform_groups.count(std::string(kLocationGroup)) > 0; });
  s.adid_static_share = share_of(apps, [](const auto& f) { return f.adid_static; });
  s.adid_traffic_share = share_of(apps, [](const auto& f) { return f.adid_in_traffic; });

  std::vector<std::uint64_t> libs, hosts, roots;
  std::map<std::string, std::size_t> lib_counts, host_counts, root_counts, country_counts;
  for (const auto* f : apps) {
    libs.push_back(f->tracker_libraries.size());
    hosts.push_back(f->tracking_hosts.size());
    roots.push_back(f->root_companies.size());
    count_keys(f->tracker_libraries, lib_counts);
    count_keys(f->tracking_hosts, host_counts);
    count_keys(f->root_companies, root_counts);
    count_keys(f->countries, country_counts);
  }
  s.library_counts = stats::descriptive_stats(libs);
  s.tracking_host_counts = stats::descriptive_stats(hosts);
  s.root_company_counts = stats::descriptive_stats(roots);

  // Host prevalence filter is measured on the whole platform corpus.
  std::map<std::string, std::size_t> corpus_hosts;
  for (const auto* f : corpus) count_keys(f->tracking_hosts, corpus_hosts);
  for (auto it = host_counts.begin(); it != host_counts.end();) {
    double corpus_share = static_cast<double>(corpus_hosts[it->first]) / static_cast<double>(corpus.size());
    it = corpus_share < kTrackingHostMinShare ? host_counts.erase(it) : std::next(it);
  }

  s.libraries = rank(lib_counts, apps.size());
  s.tracking_hosts = rank(host_counts, apps.size());
  s.root_companies = rank(root_counts, apps.size());
  s.countries = rank(country_counts, apps.size());
  return s;
}

std::vector<GroupSummary> summarize_all(const std::vector<PrivacyFootprint>& footprints) {
  std::vector<GroupSummary> out;
  for (auto platform : {Platform::kAndroid, Platform::kIos}) {
    for (auto group : {Group::kAll, Group::kCrossPlatform, Group::kChildren}) {
      bool any = std::any_of(footprints.begin(), footprints.end(), [&](const auto& f) {
        return f.platform == platform && in_group(f, group);
      });
      if (any) out.push_back(summarize_group(footprints, {group, platform}));
    }
  }
  return out;
}

}  // namespace footprint::report
