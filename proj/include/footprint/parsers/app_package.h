#pragma once

#include <optional>
#include <string>

#include "footprint/common.h"
#include "footprint/parsers/manifest.h"

namespace footprint::parsers {

struct AppPackage {
  std::string app_id;
  Platform platform = Platform::kAndroid;
  ClassNameSet class_names;
  ManifestData manifest;
  Category category = Category::kGeneral;
  std::string title;
  // iOS only: the executable is encrypted, class_names is empty until a
  // class dump is merged in.
  bool binary_encrypted = false;
};

// Opens an APK or IPA. An archive is an APK when it has classes.dex at the
// root and an IPA when it has Payload/<name>.app/Info.plist. APK class names
// are the union over classes.dex, classes2.dex, ...
//
// app_id defaults to the manifest package name / CFBundleIdentifier; callers
// with sidecar metadata override it. Throws NotAnArchive, UnrecognizedLayout
// and any error of the format parsers.
AppPackage open_app_archive(ByteView bytes, std::optional<Platform> hint = std::nullopt);

}  // namespace footprint::parsers
