#include "footprint/stats/text_match.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>

namespace footprint::stats {
namespace {

void alnum_runs(std::string_view text, std::vector<std::string>& out) {
  std::string cur;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) && u < 0x80) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
}

double norm(const AppTextVector& v) {
  double sum = 0;
  for (const auto& [t, w] : v.weights) sum += w * w;
  return std::sqrt(sum);
}

constexpr double kTieEpsilon = 1e-12;

}  // namespace

std::vector<std::string> tokenize(std::string_view title, std::string_view identifier) {
  std::vector<std::string> tokens;
  alnum_runs(title, tokens);
  // Dots and dashes are separators too, so one pass over the identifier
  // yields the runs of each segment.
  alnum_runs(identifier, tokens);
  return tokens;
}

std::vector<AppTextVector> build_text_vectors(const std::vector<AppText>& apps) {
  std::vector<std::map<std::string, double>> tf(apps.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    for (auto& tok : tokenize(apps[i].title, apps[i].identifier)) tf[i][tok] += 1;
    for (const auto& [tok, count] : tf[i]) ++df[tok];
  }
  const double n = static_cast<double>(apps.size());
  std::vector<AppTextVector> out;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    AppTextVector v{apps[i].app_id, apps[i].platform, {}};
    for (const auto& [tok, count] : tf[i]) {
      double w = count * std::log(n / static_cast<double>(df[tok]));
      if (w > 0) v.weights.emplace(tok, w);
    }
    out.push_back(std::move(v));
  }
  return out;
}

double cosine_similarity(const AppTextVector& a, const AppTextVector& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0 || nb == 0) return 0;
  const auto& small = a.weights.size() <= b.weights.size() ? a.weights : b.weights;
  const auto& large = &small == &a.weights ? b.weights : a.weights;
  double dot = 0;
  for (const auto& [tok, w] : small)
    if (auto it = large.find(tok); it != large.end()) dot += w * it->second;
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

std::vector<CrossPlatformPair> match_cross_platform(const std::vector<AppTextVector>& android,
                                                    const std::vector<AppTextVector>& ios, double threshold) {
  std::vector<CrossPlatformPair> proposals;
  for (const auto& a : android) {
    const AppTextVector* best = nullptr;
    double best_sim = 0;
    for (const auto& i : ios) {
      double s = cosine_similarity(a, i);
      if (!best || s > best_sim + kTieEpsilon || (std::abs(s - best_sim) <= kTieEpsilon && i.app_id < best->app_id)) {
        best = &i;
        best_sim = s;
      }
    }
    if (best && best_sim >= threshold) proposals.push_back({a.app_id, best->app_id, best_sim});
  }
  std::sort(proposals.begin(), proposals.end(), [](const auto& x, const auto& y) {
    return std::tuple(-x.similarity, x.android_id, x.ios_id) < std::tuple(-y.similarity, y.android_id, y.ios_id);
  });
  std::set<std::string> used_android, used_ios;
  std::vector<CrossPlatformPair> out;
  for (auto& p : proposals) {
    if (used_android.count(p.android_id) || used_ios.count(p.ios_id)) continue;
    used_android.insert(p.android_id);
    used_ios.insert(p.ios_id);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.android_id < y.android_id; });
  return out;
}

}  // namespace footprint::stats
