#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace footprint::traffic {

using NameValue = std::pair<std::string, std::string>;

struct Transaction {
  std::string url;
  std::string host;  // lowercase, no port, userinfo or brackets
  std::string method;
  std::vector<NameValue> headers;
  std::vector<NameValue> query;  // values as recorded, not percent-decoded
  std::string body_text;
};

struct TrafficCapture {
  std::string app_id;
  std::vector<Transaction> transactions;
  // Entries dropped as MalformedEntry.
  std::size_t skipped_entries = 0;
};

// HAR 1.2 request side only. Query pairs come from request.queryString when
// present, else from the URL. Throws NotHar for anything that is not a HAR
// log; entries without a usable request URL are skipped and counted.
TrafficCapture load_har(std::string_view json, std::string app_id = {});

// "https://User@Host.Example:8443/p" -> "host.example". Empty when the URL
// has no scheme or host.
std::string host_of_url(std::string_view url);

}  // namespace footprint::traffic
