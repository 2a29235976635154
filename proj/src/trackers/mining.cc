#include "footprint/trackers/mining.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "footprint/error.h"

namespace footprint::trackers {
namespace {

bool upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

std::string ios_token(std::string_view name) {
  if (auto dot = name.find('.'); dot != std::string_view::npos) return std::string(name.substr(0, dot));
  std::size_t run = 0;
  while (run < name.size() && upper(name[run])) ++run;
  if (run == 0) {
    // lowercase or symbol start: the leading lowercase word, if any
    std::size_t n = 0;
    while (n < name.size() && lower(name[n])) ++n;
    return std::string(name.substr(0, n));
  }
  if (run == name.size() || !lower(name[run])) return std::string(name.substr(0, run));
  // The last capital of the run starts the first word: FBSDKLogin -> FBSDK.
  if (run - 1 >= 2) return std::string(name.substr(0, run - 1));
  // Single leading capital: use the first word, UnityAds -> Unity.
  std::size_t end = run;
  while (end < name.size() && lower(name[end])) ++end;
  return std::string(name.substr(0, end));
}

}  // namespace

std::string mining_prefix(std::string_view class_name, Platform platform) {
  if (platform == Platform::kIos) return ios_token(class_name);
  auto first = class_name.find('.');
  if (first == std::string_view::npos || first == 0) return {};
  auto second = class_name.find('.', first + 1);
  if (second == std::string_view::npos || second == first + 1) return {};
  return std::string(class_name.substr(0, second));
}

std::vector<CandidatePrefix> mine_candidate_signatures(const std::vector<CorpusApp>& corpus, Platform platform,
                                                       double threshold, const SignatureDb* db) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no apps to mine");
  if (!(threshold > 0 && threshold <= 1))
    throw Error(ErrorCode::kBadCount, "threshold must lie in (0, 1], got " + std::to_string(threshold));
  std::map<std::string, std::size_t> apps_with;
  for (const auto& app : corpus) {
    std::set<std::string> prefixes;
    for (const auto& name : app.class_names) {
      auto p = mining_prefix(name, platform);
      if (!p.empty()) prefixes.insert(std::move(p));
    }
    for (auto& p : prefixes) ++apps_with[p];
  }
  const double n = static_cast<double>(corpus.size());
  std::vector<CandidatePrefix> out;
  for (const auto& [prefix, count] : apps_with) {
    // Compare counts rather than fractions so 37/100 >= 0.37 holds exactly.
    if (static_cast<double>(count) < threshold * n - 1e-9) continue;
    if (db && db->covers(platform, prefix)) continue;
    out.push_back({prefix, static_cast<double>(count) / n, count});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidatePrefix& a, const CandidatePrefix& b) { return a.apps > b.apps; });
  return out;
}

}  // namespace footprint::trackers
