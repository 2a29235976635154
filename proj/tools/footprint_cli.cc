// footprint: per-app privacy footprints and corpus statistics.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "footprint/common.h"
#include "footprint/companies/company_graph.h"
#include "footprint/error.h"
#include "footprint/parsers/class_dump.h"
#include "footprint/report/batch.h"
#include "footprint/report/emit.h"
#include "footprint/stats/text_match.h"
#include "footprint/trackers/mining.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace footprint;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kInputError = 1;
constexpr int kPartialFailure = 2;

struct DbPaths {
  std::string signatures = (report::default_data_dir() / "signatures.json").string();
  std::string companies = (report::default_data_dir() / "companies.json").string();
  std::string permissions = (report::default_data_dir() / "permissions.json").string();

  report::Databases load() const { return report::Databases::load(signatures, companies, permissions); }
};

void add_db_flags(CLI::App* cmd, DbPaths& paths, bool permissions) {
  cmd->add_option("--signatures", paths.signatures, "tracker signature database")->check(CLI::ExistingFile);
  cmd->add_option("--companies", paths.companies, "company database")->check(CLI::ExistingFile);
  if (permissions)
    cmd->add_option("--dangerous-list", paths.permissions, "permission classification tables")
        ->check(CLI::ExistingFile);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

std::vector<stats::AppText> read_app_texts(const std::string& path, std::optional<Platform> platform) {
  auto doc = json::parse(read_text_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw Error(ErrorCode::kSchemaError, path + ": expected a JSON array");
  std::vector<stats::AppText> out;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("app_id")) throw Error(ErrorCode::kSchemaError, path + ": entry without app_id");
    stats::AppText t;
    t.app_id = item.at("app_id").get<std::string>();
    t.platform = item.contains("platform") ? parse_platform(item.at("platform").get<std::string>())
                                           : platform.value_or(Platform::kAndroid);
    t.title = item.value("title", "");
    t.identifier = item.value("identifier", t.app_id);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<trackers::CorpusApp> read_class_corpus(const fs::path& path) {
  std::vector<trackers::CorpusApp> corpus;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      corpus.push_back({f.stem().string(), parsers::ingest_class_dump(read_text_file(f))});
    return corpus;
  }
  auto doc = json::parse(read_text_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(ErrorCode::kSchemaError, path.string() + ": expected {app_id: [class names]}");
  for (const auto& [app, names] : doc.items()) {
    if (!names.is_array()) throw Error(ErrorCode::kSchemaError, app + ": class names must be an array");
    corpus.push_back({app, names.get<ClassNameSet>()});
  }
  return corpus;
}

ordered_json company_json(const companies::Company& c) {
  return {{"company_id", c.company_id}, {"display_name", c.display_name}, {"country", c.country}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy footprints of Android and iOS app packages"};
  app.require_subcommand(1);

  DbPaths paths;
  std::string output, format = "json", profile_path, generated_at;

  auto* scan = app.add_subcommand("scan", "analyze one APK/IPA");
  std::string package, har;
  scan->add_option("package", package, "APK or IPA file")->required()->check(CLI::ExistingFile);
  scan->add_option("--har", har, "captured traffic (HAR 1.2)")->check(CLI::ExistingFile);
  scan->add_option("--device-profile", profile_path, "identifiers of the capture device")->check(CLI::ExistingFile);
  scan->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--generated-at", generated_at, "timestamp recorded in the report");
  scan->add_option("-o,--output", output, "output file (default stdout)");
  add_db_flags(scan, paths, true);

  auto* batch = app.add_subcommand("batch", "analyze a directory of apps, captures and sidecars");
  std::string dir, summary_output;
  unsigned jobs = 0;
  double match_threshold = stats::kCrossPlatformThreshold;
  batch->add_option("dir", dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
  batch->add_option("--device-profile", profile_path, "identifiers of the capture devices")->check(CLI::ExistingFile);
  batch->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  batch->add_option("--threshold", match_threshold, "cross-platform similarity threshold")->check(CLI::Range(0.0, 1.0));
  batch->add_option("--jobs", jobs, "worker threads (default: all cores)");
  batch->add_option("--generated-at", generated_at, "timestamp recorded in the report");
  batch->add_option("-o,--output", output, "footprints file (default stdout)");
  batch->add_option("--summary", summary_output, "also write group summaries (JSON) here");
  add_db_flags(batch, paths, true);

  auto* stats_cmd = app.add_subcommand("stats", "group summaries of a footprints.json");
  std::string footprints_path, stats_format = "table";
  stats_cmd->add_option("footprints", footprints_path, "footprints.json")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--format", stats_format, "table or json")->check(CLI::IsMember({"table", "json"}));
  stats_cmd->add_option("-o,--output", output, "output file (default stdout)");

  auto* match = app.add_subcommand("match", "pair apps across platforms by title and identifier");
  std::string android_meta, ios_meta;
  double threshold = stats::kCrossPlatformThreshold;
  match->add_option("android", android_meta, "JSON array of {app_id, title[, identifier]}")->required()->check(CLI::ExistingFile);
  match->add_option("ios", ios_meta, "JSON array of {app_id, title[, identifier]}")->required()->check(CLI::ExistingFile);
  match->add_option("--threshold", threshold, "minimum cosine similarity")->check(CLI::Range(0.0, 1.0));
  match->add_option("-o,--output", output, "output file (default stdout)");

  auto* mine = app.add_subcommand("mine", "candidate signature prefixes from a class-name corpus");
  std::string corpus_path, platform_name;
  double mine_threshold = trackers::kDefaultMiningThreshold;
  bool keep_known = false;
  mine->add_option("corpus", corpus_path, "directory of class dumps (*.txt) or JSON {app_id: [names]}")
      ->required()
      ->check(CLI::ExistingPath);
  mine->add_option("--platform", platform_name, "android or ios")->required()->check(CLI::IsMember({"android", "ios"}));
  mine->add_option("--threshold", mine_threshold, "minimum share of apps");
  mine->add_flag("--keep-known", keep_known, "do not drop prefixes the signature database covers");
  mine->add_option("-o,--output", output, "output file (default stdout)");
  add_db_flags(mine, paths, false);

  auto* resolve = app.add_subcommand("resolve", "ownership chain of a host or company id");
  std::string query;
  resolve->add_option("query", query, "host name or company_id")->required();
  resolve->add_option("--companies", paths.companies, "company database")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*scan) {
      auto db = paths.load();
      report::DeviceProfiles profiles;
      if (!profile_path.empty()) profiles = report::parse_device_profiles(read_text_file(profile_path));
      std::optional<fs::path> har_path;
      if (!har.empty()) har_path = har;
      report::Report r{generated_at.empty() ? report::utc_timestamp() : generated_at,
                       {report::scan_package(package, db, profiles, har_path)}, {}};
      write_output(output, report::emit_report(r, report::parse_format(format)));
      return 0;
    }
    if (*batch) {
      auto db = paths.load();
      report::BatchOptions options;
      if (!profile_path.empty()) options.profiles = report::parse_device_profiles(read_text_file(profile_path));
      options.jobs = jobs;
      options.match_threshold = match_threshold;
      auto result = report::run_batch(dir, db, options);
      for (const auto& f : result.failures) std::cerr << "failed: " << f.package << ": " << f.message << "\n";
      if (result.footprints.empty()) {
        std::cerr << "no app could be analyzed\n";
        return kInputError;
      }
      report::Report r{generated_at.empty() ? report::utc_timestamp() : generated_at, result.footprints, {}};
      write_output(output, report::emit_report(r, report::parse_format(format)));
      if (!summary_output.empty())
        write_file(summary_output, report::emit_summaries(report::summarize_all(result.footprints)));
      return result.failures.empty() ? 0 : kPartialFailure;
    }
    if (*stats_cmd) {
      auto r = report::parse_report(read_text_file(footprints_path));
      auto summaries = report::summarize_all(r.footprints);
      write_output(output, stats_format == "json" ? report::emit_summaries(summaries)
                                                  : report::format_summary_tables(summaries));
      return 0;
    }
    if (*match) {
      auto texts = read_app_texts(android_meta, Platform::kAndroid);
      auto ios_texts = read_app_texts(ios_meta, Platform::kIos);
      for (auto& t : ios_texts) t.platform = Platform::kIos;
      for (auto& t : texts) t.platform = Platform::kAndroid;
      texts.insert(texts.end(), ios_texts.begin(), ios_texts.end());
      std::vector<stats::AppTextVector> android, ios;
      for (auto& v : stats::build_text_vectors(texts))
        (v.platform == Platform::kAndroid ? android : ios).push_back(std::move(v));
      ordered_json pairs = ordered_json::array();
      for (const auto& p : stats::match_cross_platform(android, ios, threshold))
        pairs.push_back({{"android_id", p.android_id}, {"ios_id", p.ios_id}, {"similarity", p.similarity}});
      write_output(output, pairs.dump(2) + "\n");
      return 0;
    }
    if (*mine) {
      auto corpus = read_class_corpus(corpus_path);
      auto platform = parse_platform(platform_name);
      std::optional<trackers::SignatureDb> db;
      if (!keep_known) db = trackers::SignatureDb::load_file(paths.signatures);
      ordered_json out = ordered_json::array();
      for (const auto& c : trackers::mine_candidate_signatures(corpus, platform, mine_threshold, db ? &*db : nullptr))
        out.push_back({{"prefix", c.prefix}, {"apps", c.apps}, {"prevalence", c.prevalence}});
      write_output(output, out.dump(2) + "\n");
      return 0;
    }
    if (*resolve) {
      auto graph = companies::CompanyGraph::load_file(paths.companies);
      ordered_json out;
      std::string company_id = query;
      if (!graph.find(query)) {
        auto owner = graph.company_for_host(to_lower_ascii(query));
        if (!owner) throw Error(ErrorCode::kUnknownCompany, "no company or tracking domain matches " + query);
        out["host"] = to_lower_ascii(query);
        out["domain"] = owner->domain;
        company_id = owner->company_id;
      }
      ordered_json chain = ordered_json::array();
      for (const auto* c : graph.chain(company_id)) chain.push_back(company_json(*c));
      out["company"] = company_json(graph.at(company_id));
      out["chain"] = std::move(chain);
      out["root"] = company_json(graph.resolve_root(company_id));
      out["countries"] = graph.jurisdictions({company_id}, true);
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
