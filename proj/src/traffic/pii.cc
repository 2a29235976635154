#include "footprint/traffic/pii.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <tuple>

#include "footprint/common.h"
#include "footprint/error.h"
#include "json_util.h"

namespace footprint::traffic {
namespace {

constexpr std::string_view kKindNames[] = {"ad_id",   "android_id",  "serial",    "imei",
                                           "wifi_mac", "phone_model", "phone_name"};
constexpr std::string_view kTransformNames[] = {"raw", "md5", "sha1", "sha256", "urlencoded"};
constexpr std::string_view kLocationNames[] = {"url", "query", "header", "body"};

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::string_view (&names)[N], const char* what) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == name) return static_cast<Enum>(i);
  throw Error(ErrorCode::kSchemaError, std::string("unknown ") + what + " \"" + std::string(name) + "\"");
}

std::string digest_hex(const EVP_MD* md, std::string_view data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out, &len, md, nullptr) != 1)
    throw Error(ErrorCode::kIoError, "digest computation failed");
  static const char* digits = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += digits[out[i] >> 4];
    hex += digits[out[i] & 15];
  }
  return hex;
}

std::string to_upper_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool contains_ci(const std::string& lowered_haystack, const std::string& lowered_needle) {
  return lowered_haystack.find(lowered_needle) != std::string::npos;
}

}  // namespace

std::string_view to_string(IdentifierKind kind) { return kKindNames[static_cast<int>(kind)]; }
std::string_view to_string(Transform transform) { return kTransformNames[static_cast<int>(transform)]; }
std::string_view to_string(Location location) { return kLocationNames[static_cast<int>(location)]; }

IdentifierKind parse_identifier_kind(std::string_view name) {
  return parse_enum<IdentifierKind>(name, kKindNames, "identifier kind");
}
Transform parse_transform(std::string_view name) { return parse_enum<Transform>(name, kTransformNames, "transform"); }
Location parse_location(std::string_view name) { return parse_enum<Location>(name, kLocationNames, "location"); }

std::optional<std::string> DeviceProfile::value(IdentifierKind kind) const {
  auto nonempty = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
  switch (kind) {
    case IdentifierKind::kAdId:
      return nonempty(ad_id);
    case IdentifierKind::kAndroidId:
      return android_id;
    case IdentifierKind::kSerial:
      return serial;
    case IdentifierKind::kImei:
      return imei;
    case IdentifierKind::kWifiMac:
      return wifi_mac;
    case IdentifierKind::kPhoneModel:
      return nonempty(phone_model);
    case IdentifierKind::kPhoneName:
      return nonempty(phone_name);
  }
  return std::nullopt;
}

void validate(const DeviceProfile& p) {
  static const std::regex uuid("[0-9a-fA-F]{8}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{12}");
  static const std::regex mac("[0-9a-fA-F]{2}(:[0-9a-fA-F]{2}){5}");
  static const std::regex digits("[0-9]+");
  if (!std::regex_match(p.ad_id, uuid)) throw Error(ErrorCode::kSchemaError, "ad_id is not a UUID: " + p.ad_id);
  if (p.wifi_mac && !std::regex_match(*p.wifi_mac, mac))
    throw Error(ErrorCode::kSchemaError, "wifi_mac is not six colon-separated octets: " + *p.wifi_mac);
  if (p.imei && !std::regex_match(*p.imei, digits))
    throw Error(ErrorCode::kSchemaError, "imei must be digits: " + *p.imei);
  for (const auto* opt : {&p.android_id, &p.serial})
    if (opt->has_value() && (*opt)->empty()) throw Error(ErrorCode::kSchemaError, "empty identifier");
}

DeviceProfile parse_device_profile(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "device profile");
  json_util::Reader r(doc, "device profile");
  r.allow_only({"ad_id", "android_id", "serial", "imei", "wifi_mac", "phone_model", "phone_name"});
  DeviceProfile p;
  p.ad_id = r.string("ad_id");
  auto optional = [&](const char* key) {
    return r.has(key) ? std::optional<std::string>(r.string(key)) : std::nullopt;
  };
  p.android_id = optional("android_id");
  p.serial = optional("serial");
  p.imei = optional("imei");
  p.wifi_mac = optional("wifi_mac");
  p.phone_model = r.string_or("phone_model", "");
  p.phone_name = r.string_or("phone_name", "");
  validate(p);
  return p;
}

std::string percent_encode(std::string_view text) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += digits[c >> 4];
      out += digits[c & 15];
    }
  }
  return out;
}

NeedleSet build_needles(const DeviceProfile& profile) {
  NeedleSet set;
  std::set<std::tuple<IdentifierKind, Transform, std::string>> seen;
  auto add = [&](IdentifierKind kind, Transform t, std::string text) {
    text = to_lower_ascii(text);
    if (text.empty() || !seen.emplace(kind, t, text).second) return;
    set.needles.push_back({kind, t, std::move(text)});
  };
  for (auto kind : kAllIdentifierKinds) {
    auto value = profile.value(kind);
    if (!value) continue;
    bool case_folded = kind == IdentifierKind::kAdId || kind == IdentifierKind::kWifiMac;
    std::string canonical = case_folded ? to_lower_ascii(*value) : *value;
    std::vector<std::string> hashed = {canonical};
    if (case_folded) hashed.push_back(to_upper_ascii(canonical));
    add(kind, Transform::kRaw, canonical);
    for (const auto& form : hashed) {
      add(kind, Transform::kMd5, digest_hex(EVP_md5(), form));
      add(kind, Transform::kSha1, digest_hex(EVP_sha1(), form));
      add(kind, Transform::kSha256, digest_hex(EVP_sha256(), form));
    }
    std::string encoded = percent_encode(canonical);
    if (to_lower_ascii(encoded) != to_lower_ascii(canonical)) add(kind, Transform::kUrlencoded, encoded);
  }
  return set;
}

std::vector<PiiMatch> scan_capture(const TrafficCapture& capture, const NeedleSet& needles) {
  std::set<PiiMatch> found;
  for (const auto& t : capture.transactions) {
    std::vector<std::pair<Location, std::string>> fields;
    fields.emplace_back(Location::kUrl, to_lower_ascii(std::string_view(t.url).substr(0, t.url.find('?'))));
    for (const auto& [name, value] : t.query) fields.emplace_back(Location::kQuery, to_lower_ascii(value));
    for (const auto& [name, value] : t.headers) fields.emplace_back(Location::kHeader, to_lower_ascii(value));
    if (!t.body_text.empty()) fields.emplace_back(Location::kBody, to_lower_ascii(t.body_text));
    for (const auto& needle : needles.needles)
      for (const auto& [location, text] : fields)
        if (contains_ci(text, needle.text)) found.insert({needle.kind, needle.transform, t.host, location});
  }
  return {found.begin(), found.end()};
}

}  // namespace footprint::traffic
