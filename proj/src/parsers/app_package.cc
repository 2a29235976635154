#include "footprint/parsers/app_package.h"

#include <algorithm>
#include <variant>

#include "footprint/error.h"
#include "footprint/parsers/dex_file.h"
#include "footprint/parsers/macho.h"
#include "footprint/parsers/plist.h"
#include "footprint/parsers/zip_archive.h"

namespace footprint::parsers {
namespace {

// "classes.dex", "classes2.dex", ... at the archive root.
bool is_dex_entry(std::string_view name) {
  if (name.size() < 11 || name.substr(0, 7) != "classes" || name.substr(name.size() - 4) != ".dex") return false;
  const std::string_view n = name.substr(7, name.size() - 11);
  return std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
         (n.empty() || n.front() != '0');
}

// "Payload/<name>.app/Info.plist"; returns the bundle directory.
std::optional<std::string> bundle_dir(std::string_view name) {
  constexpr std::string_view kPayload = "Payload/";
  constexpr std::string_view kInfo = ".app/Info.plist";
  if (name.substr(0, kPayload.size()) != kPayload || name.size() <= kPayload.size() + kInfo.size()) return std::nullopt;
  if (name.substr(name.size() - kInfo.size()) != kInfo) return std::nullopt;
  const std::string_view app = name.substr(kPayload.size(), name.size() - kPayload.size() - kInfo.size());
  if (app.empty() || app.find('/') != std::string_view::npos) return std::nullopt;
  return std::string(name.substr(0, name.size() - std::string_view("Info.plist").size()));
}

AppPackage open_apk(const ZipArchive& zip) {
  AppPackage pkg;
  pkg.platform = Platform::kAndroid;
  for (const auto& e : zip.entries()) {
    if (!is_dex_entry(e.name)) continue;
    pkg.class_names.merge(extract_dex_class_names(zip.read(e)));
  }
  if (const auto* manifest = zip.find("AndroidManifest.xml")) {
    pkg.manifest = parse_android_manifest(zip.read(*manifest));
  }
  pkg.app_id = pkg.manifest.package_name;
  return pkg;
}

AppPackage open_ipa(const ZipArchive& zip, const std::string& bundle) {
  AppPackage pkg;
  pkg.platform = Platform::kIos;
  pkg.manifest = parse_plist(zip.read(bundle + "Info.plist"));
  pkg.app_id = pkg.manifest.package_name;

  std::string executable;
  if (auto it = pkg.manifest.metadata.find("CFBundleExecutable"); it != pkg.manifest.metadata.end()) {
    executable = it->second;
  } else {
    // Bundle name without ".app" is the conventional executable name.
    const std::string dir = bundle.substr(8, bundle.size() - 8 - 5);
    executable = dir;
  }
  const ZipArchive::Entry* binary = zip.find(bundle + executable);
  if (binary == nullptr) return pkg;
  MachOClassNames names = extract_macho_class_names(zip.read(*binary));
  if (auto* set = std::get_if<ClassNameSet>(&names)) {
    pkg.class_names = std::move(*set);
  } else {
    pkg.binary_encrypted = true;
  }
  return pkg;
}

}  // namespace

AppPackage open_app_archive(ByteView bytes, std::optional<Platform> hint) {
  const ZipArchive zip = ZipArchive::open(bytes);
  const bool apk = zip.contains("classes.dex");
  std::optional<std::string> bundle;
  for (const auto& e : zip.entries()) {
    if ((bundle = bundle_dir(e.name))) break;
  }

  if (hint == Platform::kAndroid) {
    if (!apk) throw Error(ErrorCode::kUnrecognizedLayout, "no classes.dex at archive root");
    return open_apk(zip);
  }
  if (hint == Platform::kIos) {
    if (!bundle) throw Error(ErrorCode::kUnrecognizedLayout, "no Payload/*.app/Info.plist");
    return open_ipa(zip, *bundle);
  }
  if (apk) return open_apk(zip);
  if (bundle) return open_ipa(zip, *bundle);
  throw Error(ErrorCode::kUnrecognizedLayout, "neither classes.dex nor Payload/*.app/Info.plist found");
}

}  // namespace footprint::parsers
