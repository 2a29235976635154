#pragma once

#include <string>
#include <vector>

#include "footprint/common.h"
#include "footprint/trackers/signature_db.h"

namespace footprint::trackers {

struct CorpusApp {
  std::string app_id;
  ClassNameSet class_names;
};

struct CandidatePrefix {
  std::string prefix;
  double prevalence = 0;
  std::size_t apps = 0;

  bool operator==(const CandidatePrefix&) const = default;
};

inline constexpr double kDefaultMiningThreshold = 0.01;

// Android: first two package segments ("com.adfoo" for com.adfoo.x.Y);
// classes in a package shallower than that contribute nothing.
// iOS: the class-name prefix token ("FBSDK" for FBSDKLoginButton, "Unity"
// for UnityAds, the module for "Module.Class").
// Empty result when no prefix can be formed.
std::string mining_prefix(std::string_view class_name, Platform platform);

// Prefixes present in at least `threshold` of the apps, most prevalent
// first (ties by prefix), minus prefixes `db` already covers (pass nullptr
// to keep them all). Throws EmptyCorpus, or BadCount for a threshold
// outside (0, 1].
std::vector<CandidatePrefix> mine_candidate_signatures(const std::vector<CorpusApp>& corpus, Platform platform,
                                                       double threshold, const SignatureDb* db);

}  // namespace footprint::trackers
