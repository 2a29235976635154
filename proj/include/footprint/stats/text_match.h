#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/common.h"

namespace footprint::stats {

struct AppText {
  std::string app_id;
  Platform platform;
  std::string title;
  std::string identifier;
};

struct AppTextVector {
  std::string app_id;
  Platform platform;
  std::map<std::string, double> weights;
};

// Lowercase ASCII alphanumeric runs of the title, then of each dot/dash
// separated identifier segment.
std::vector<std::string> tokenize(std::string_view title, std::string_view identifier);

// tf = raw count, idf = ln(N / df) over the whole input, weight = tf * idf.
// Zero weights are dropped.
std::vector<AppTextVector> build_text_vectors(const std::vector<AppText>& apps);

// 0 when either vector has zero norm.
double cosine_similarity(const AppTextVector& a, const AppTextVector& b);

struct CrossPlatformPair {
  std::string android_id;
  std::string ios_id;
  double similarity = 0;
};

inline constexpr double kCrossPlatformThreshold = 0.95;

// Each Android app proposes its best iOS candidate (ties: smaller ios app_id);
// proposals at or above the threshold are accepted greedily by descending
// similarity (ties: android then ios app_id), each iOS app at most once.
// Result sorted by android_id.
std::vector<CrossPlatformPair> match_cross_platform(const std::vector<AppTextVector>& android,
                                                    const std::vector<AppTextVector>& ios,
                                                    double threshold = kCrossPlatformThreshold);

}  // namespace footprint::stats
