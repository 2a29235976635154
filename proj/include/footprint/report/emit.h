#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "footprint/report/footprint.h"
#include "footprint/report/summary.h"
#include "json.hpp"

namespace footprint::report {

inline constexpr std::string_view kReportVersion = "footprint/1";

enum class Format { kJson, kCsv };
Format parse_format(std::string_view name);

struct Report {
  std::string generated_at;
  std::vector<PrivacyFootprint> footprints;
  std::vector<GroupSummary> summaries;
};

nlohmann::ordered_json to_json(const PrivacyFootprint& footprint);
nlohmann::ordered_json to_json(const GroupSummary& summary);
// Throws SchemaError.
PrivacyFootprint footprint_from_json(const nlohmann::json& j);

// JSON: {version, generated_at, apps[, groups]} with a fixed key order.
// CSV: one row per app after a fixed header, list fields joined by ";".
// Throws EmptyInput for an empty report.
std::string emit_report(const Report& report, Format format);

// {groups: [...]}
std::string emit_summaries(const std::vector<GroupSummary>& summaries);
// Plain-text tables: the comparative table and per-group count statistics.
std::string format_summary_tables(const std::vector<GroupSummary>& summaries);

// Reads back an emitted JSON report (apps and generated_at only; groups are
// recomputed by the caller). Throws SchemaError.
Report parse_report(std::string_view json);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace footprint::report
