#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/error.h"
#include "json.hpp"

namespace footprint::json_util {

using nlohmann::json;

inline json parse(std::string_view text, ErrorCode code, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(code, std::string(what) + ": " + e.what());
  }
}

// Throws `code` naming `context` and the offending key.
class Reader {
 public:
  Reader(const json& object, std::string context, ErrorCode code = ErrorCode::kSchemaError)
      : j_(object), context_(std::move(context)), code_(code) {
    if (!j_.is_object()) fail("expected an object");
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& item : j_.items()) {
      bool known = false;
      for (auto k : keys) known = known || item.key() == k;
      if (!known) fail("unknown key \"" + item.key() + "\"");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& at(const std::string& key) const {
    if (!j_.contains(key)) fail("missing key \"" + key + "\"");
    return j_.at(key);
  }

  std::string string(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_string()) fail("\"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  std::string string_or(const std::string& key, std::string fallback) const {
    return has(key) ? string(key) : std::move(fallback);
  }

  std::vector<std::string> strings(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array()) fail("\"" + key + "\" must be an array");
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) fail("\"" + key + "\" must contain only strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const { throw Error(code_, context_ + ": " + message); }

 private:
  const json& j_;
  std::string context_;
  ErrorCode code_;
};

}  // namespace footprint::json_util
