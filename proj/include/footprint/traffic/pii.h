#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/traffic/capture.h"

namespace footprint::traffic {

enum class IdentifierKind { kAdId, kAndroidId, kSerial, kImei, kWifiMac, kPhoneModel, kPhoneName };
enum class Transform { kRaw, kMd5, kSha1, kSha256, kUrlencoded };
enum class Location { kUrl, kQuery, kHeader, kBody };

inline constexpr IdentifierKind kAllIdentifierKinds[] = {
    IdentifierKind::kAdId,     IdentifierKind::kAndroidId,  IdentifierKind::kSerial,   IdentifierKind::kImei,
    IdentifierKind::kWifiMac, IdentifierKind::kPhoneModel, IdentifierKind::kPhoneName};
inline constexpr Transform kAllTransforms[] = {Transform::kRaw, Transform::kMd5, Transform::kSha1,
                                               Transform::kSha256, Transform::kUrlencoded};
inline constexpr Location kAllLocations[] = {Location::kUrl, Location::kQuery, Location::kHeader,
                                             Location::kBody};

std::string_view to_string(IdentifierKind kind);
std::string_view to_string(Transform transform);
std::string_view to_string(Location location);
// Throw SchemaError on unknown names.
IdentifierKind parse_identifier_kind(std::string_view name);
Transform parse_transform(std::string_view name);
Location parse_location(std::string_view name);

struct DeviceProfile {
  std::string ad_id;
  std::optional<std::string> android_id;
  std::optional<std::string> serial;
  std::optional<std::string> imei;
  std::optional<std::string> wifi_mac;
  std::string phone_model;
  std::string phone_name;

  std::optional<std::string> value(IdentifierKind kind) const;
};

// Throws SchemaError: ad_id must be a UUID, wifi_mac six colon-separated
// hex octets, imei digits only.
void validate(const DeviceProfile& profile);
DeviceProfile parse_device_profile(std::string_view json);

struct Needle {
  IdentifierKind kind;
  Transform transform;
  std::string text;  // lowercase; matching is case-insensitive
};

struct NeedleSet {
  std::vector<Needle> needles;
};

// Raw, md5, sha1, sha256 (lowercase hex) and RFC 3986 percent-encoded
// (uppercase escapes) forms of every present identifier. Hashes are taken
// over the canonical raw form; ad_id and wifi_mac are canonically lowercase
// and additionally hashed in uppercase. A percent-encoded form identical to
// the raw form is not repeated.
NeedleSet build_needles(const DeviceProfile& profile);

std::string percent_encode(std::string_view text);

struct PiiMatch {
  IdentifierKind kind;
  Transform transform;
  std::string host;
  Location location;

  auto operator<=>(const PiiMatch&) const = default;
};

// url = the request URL without its query string; query = query values;
// header = header values; body = request body text. Sorted and unique.
std::vector<PiiMatch> scan_capture(const TrafficCapture& capture, const NeedleSet& needles);

}  // namespace footprint::traffic
