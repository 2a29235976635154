#include <cctype>

#include "footprint/common.h"
#include "footprint/error.h"
#include "footprint/traffic/capture.h"
#include "json_util.h"

namespace footprint::traffic {
namespace {

using nlohmann::json;

struct Skip {};

std::vector<NameValue> name_values(const json& entry, const char* key) {
  std::vector<NameValue> out;
  if (!entry.contains(key)) return out;
  const json& list = entry.at(key);
  if (!list.is_array()) throw Skip{};
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("name") || !item.at("name").is_string()) throw Skip{};
    std::string value;
    if (item.contains("value")) {
      if (!item.at("value").is_string()) throw Skip{};
      value = item.at("value").get<std::string>();
    }
    out.emplace_back(item.at("name").get<std::string>(), std::move(value));
  }
  return out;
}

std::vector<NameValue> query_from_url(std::string_view url) {
  std::vector<NameValue> out;
  auto q = url.find('?');
  if (q == std::string_view::npos) return out;
  auto query = url.substr(q + 1);
  query = query.substr(0, query.find('#'));
  while (!query.empty()) {
    auto amp = query.find('&');
    auto part = query.substr(0, amp);
    if (!part.empty()) {
      auto eq = part.find('=');
      if (eq == std::string_view::npos)
        out.emplace_back(std::string(part), "");
      else
        out.emplace_back(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1)));
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return out;
}

Transaction read_entry(const json& entry) {
  if (!entry.is_object() || !entry.contains("request") || !entry.at("request").is_object()) throw Skip{};
  const json& req = entry.at("request");
  if (!req.contains("url") || !req.at("url").is_string()) throw Skip{};
  Transaction t;
  t.url = req.at("url").get<std::string>();
  t.host = host_of_url(t.url);
  if (t.host.empty()) throw Skip{};
  if (req.contains("method") && req.at("method").is_string()) t.method = req.at("method").get<std::string>();
  t.headers = name_values(req, "headers");
  t.query = req.contains("queryString") ? name_values(req, "queryString") : query_from_url(t.url);
  if (req.contains("postData")) {
    const json& post = req.at("postData");
    if (!post.is_object()) throw Skip{};
    if (post.contains("text") && post.at("text").is_string()) t.body_text = post.at("text").get<std::string>();
  }
  return t;
}

}  // namespace

std::string host_of_url(std::string_view url) {
  auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return {};
  for (char c : url.substr(0, sep))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return {};
  auto authority = url.substr(sep + 3);
  authority = authority.substr(0, authority.find_first_of("/?#"));
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  std::string_view host;
  if (authority.starts_with('[')) {
    auto close = authority.find(']');
    if (close == std::string_view::npos) return {};
    host = authority.substr(1, close - 1);
  } else {
    host = authority.substr(0, authority.find(':'));
  }
  while (host.ends_with('.')) host.remove_suffix(1);
  return to_lower_ascii(host);
}

TrafficCapture load_har(std::string_view text, std::string app_id) {
  json doc = json_util::parse(text, ErrorCode::kNotHar, "HAR");
  if (!doc.is_object() || !doc.contains("log") || !doc.at("log").is_object())
    throw Error(ErrorCode::kNotHar, "missing log object");
  const json& log = doc.at("log");
  if (!log.contains("entries") || !log.at("entries").is_array())
    throw Error(ErrorCode::kNotHar, "missing log.entries array");
  TrafficCapture capture;
  capture.app_id = std::move(app_id);
  for (const auto& entry : log.at("entries")) {
    try {
      capture.transactions.push_back(read_entry(entry));
    } catch (const Skip&) {
      ++capture.skipped_entries;
    }
  }
  return capture;
}

}  // namespace footprint::traffic
