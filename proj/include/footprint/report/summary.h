#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "footprint/report/footprint.h"
#include "footprint/stats/prevalence.h"

namespace footprint::report {

enum class Group { kAll, kCrossPlatform, kChildren };

std::string_view to_string(Group group);
Group parse_group(std::string_view name);

struct GroupSelector {
  Group group = Group::kAll;
  Platform platform = Platform::kAndroid;
};

struct Prevalence {
  std::string key;
  std::size_t apps = 0;
  double share = 0;

  bool operator==(const Prevalence&) const = default;
};

// Tracking hosts seen in fewer apps than this share of the platform corpus
// are left out of the host ranking.
inline constexpr double kTrackingHostMinShare = 0.005;

struct GroupSummary {
  Group group = Group::kAll;
  Platform platform = Platform::kAndroid;
  std::size_t total = 0;
  double mean_root_companies = 0;
  double mean_permissions = 0;
  double mean_cross_platform_permissions = 0;
  double location_share = 0;
  double adid_static_share = 0;
  double adid_traffic_share = 0;
  stats::CountStats library_counts;
  stats::CountStats tracking_host_counts;
  stats::CountStats root_company_counts;
  // Most prevalent first, ties by key.
  std::vector<Prevalence> libraries;
  std::vector<Prevalence> tracking_hosts;
  std::vector<Prevalence> root_companies;
  std::vector<Prevalence> countries;

  bool operator==(const GroupSummary&) const = default;
};

// `footprints` may mix platforms; the platform corpus is the selector's
// platform. Throws EmptyGroup when no app falls in the group.
GroupSummary summarize_group(const std::vector<PrivacyFootprint>& footprints, GroupSelector selector);

// Every non-empty group, Android first, in all / cross-platform / children
// order.
std::vector<GroupSummary> summarize_all(const std::vector<PrivacyFootprint>& footprints);

}  // namespace footprint::report
