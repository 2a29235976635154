#include "footprint/report/batch.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "footprint/error.h"
#include "footprint/parsers/class_dump.h"
#include "footprint/stats/text_match.h"
#include "footprint/traffic/capture.h"
#include "json_util.h"

namespace footprint::report {
namespace fs = std::filesystem;

namespace {

struct Sidecar {
  std::optional<std::string> app_id;
  std::optional<Platform> platform;
  std::string title;
  Category category = Category::kGeneral;
};

Sidecar read_sidecar(const fs::path& path) {
  Sidecar s;
  if (!fs::exists(path)) return s;
  auto doc = json_util::parse(read_text_file(path), ErrorCode::kSchemaError, path.filename().string());
  json_util::Reader r(doc, path.filename().string());
  r.allow_only({"app_id", "platform", "title", "category"});
  if (r.has("app_id")) s.app_id = r.string("app_id");
  if (r.has("platform")) s.platform = parse_platform(r.string("platform"));
  s.title = r.string_or("title", "");
  if (r.has("category")) s.category = parse_category(r.string("category"));
  return s;
}

fs::path sibling(const fs::path& package, const std::string& suffix) {
  return package.parent_path() / (package.stem().string() + suffix);
}

}  // namespace

const traffic::DeviceProfile* DeviceProfiles::for_platform(Platform platform) const {
  const auto& p = platform == Platform::kAndroid ? android : ios;
  return p ? &*p : nullptr;
}

DeviceProfiles parse_device_profiles(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "device profile");
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, "device profile must be an object");
  DeviceProfiles out;
  if (doc.contains("android") || doc.contains("ios")) {
    json_util::Reader(doc, "device profiles").allow_only({"android", "ios"});
    if (doc.contains("android")) out.android = traffic::parse_device_profile(doc.at("android").dump());
    if (doc.contains("ios")) out.ios = traffic::parse_device_profile(doc.at("ios").dump());
  } else {
    out.android = out.ios = traffic::parse_device_profile(text);
  }
  return out;
}

PrivacyFootprint scan_package(const fs::path& package, const Databases& db, const DeviceProfiles& profiles,
                              const std::optional<fs::path>& har) {
  Sidecar meta = read_sidecar(sibling(package, ".meta.json"));
  Bytes bytes = read_file(package);
  auto pkg = parsers::open_app_archive(bytes, meta.platform);
  if (meta.app_id) pkg.app_id = *meta.app_id;
  if (pkg.app_id.empty()) pkg.app_id = package.stem().string();
  pkg.title = meta.title;
  pkg.category = meta.category;
  if (auto dump = sibling(package, ".classes.txt"); fs::exists(dump)) {
    auto names = parsers::ingest_class_dump(read_text_file(dump));
    pkg.class_names.insert(names.begin(), names.end());
  }

  std::optional<fs::path> har_path = har;
  if (!har_path) {
    for (auto candidate : {sibling(package, ".har"), package.parent_path() / (pkg.app_id + ".har")}) {
      if (fs::exists(candidate)) {
        har_path = candidate;
        break;
      }
    }
  }
  std::optional<traffic::TrafficCapture> capture;
  if (har_path) capture = traffic::load_har(read_text_file(*har_path), pkg.app_id);
  return analyze_app(pkg, capture ? &*capture : nullptr, profiles.for_platform(pkg.platform), db);
}

void link_cross_platform(std::vector<PrivacyFootprint>& footprints, double threshold) {
  // Vectors are keyed by zero-padded position: apps on both platforms may
  // share an app_id, and position order is app_id order after sorting.
  auto key = [](std::size_t i) {
    std::string digits = std::to_string(i);
    return std::string(10 - std::min<std::size_t>(10, digits.size()), '0') + digits;
  };
  std::vector<stats::AppText> texts;
  for (std::size_t i = 0; i < footprints.size(); ++i)
    texts.push_back({key(i), footprints[i].platform, footprints[i].title, footprints[i].app_id});
  std::vector<stats::AppTextVector> android, ios;
  for (auto& v : stats::build_text_vectors(texts))
    (v.platform == Platform::kAndroid ? android : ios).push_back(std::move(v));
  for (auto& f : footprints) f.cross_platform_peer.reset();
  for (const auto& pair : stats::match_cross_platform(android, ios, threshold)) {
    auto& a = footprints[std::stoul(pair.android_id)];
    auto& i = footprints[std::stoul(pair.ios_id)];
    a.cross_platform_peer = i.app_id;
    i.cross_platform_peer = a.app_id;
  }
}

BatchResult run_batch(const fs::path& dir, const Databases& db, const BatchOptions& options) {
  std::vector<fs::path> packages;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    auto ext = to_lower_ascii(it->path().extension().string());
    if (it->is_regular_file() && (ext == ".apk" || ext == ".ipa")) packages.push_back(it->path());
  }
  if (ec) throw Error(ErrorCode::kIoError, dir.string() + ": " + ec.message());
  std::sort(packages.begin(), packages.end());

  std::vector<std::optional<PrivacyFootprint>> results(packages.size());
  std::vector<std::optional<std::string>> errors(packages.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < packages.size();) {
      try {
        results[i] = scan_package(packages[i], db, options.profiles);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, packages.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BatchResult out;
  for (std::size_t i = 0; i < packages.size(); ++i) {
    if (results[i]) out.footprints.push_back(std::move(*results[i]));
    if (errors[i]) out.failures.push_back({packages[i].filename().string(), *errors[i]});
  }
  std::sort(out.footprints.begin(), out.footprints.end(), [](const auto& a, const auto& b) {
    return std::pair(a.app_id, a.platform) < std::pair(b.app_id, b.platform);
  });
  if (!out.footprints.empty()) link_cross_platform(out.footprints, options.match_threshold);
  return out;
}

}  // namespace footprint::report
