#include "footprint/parsers/plist.h"

#include <expat.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <memory>
#include <optional>
#include <vector>

#include "footprint/error.h"
#include "parsers/byte_reader.h"
#include "parsers/text_util.h"

namespace footprint::parsers {
namespace {

constexpr std::string_view kUsageSuffix = "UsageDescription";
constexpr std::string_view kBundleIdKey = "CFBundleIdentifier";
// Seconds between 1970-01-01 and the plist epoch 2001-01-01.
constexpr std::int64_t kPlistEpochOffset = 978307200;

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string render_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Civil date from days since 1970-01-01 (Howard Hinnant's algorithm).
std::string render_unix_time(std::int64_t secs) {
  std::int64_t days = secs >= 0 ? secs / 86400 : -((-secs + 86399) / 86400);
  std::int64_t rem = secs - days * 86400;
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const std::int64_t doe = days - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = yoe + era * 400;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04lld-%02lld-%02lldT%02lld:%02lld:%02lldZ", static_cast<long long>(y),
                static_cast<long long>(m), static_cast<long long>(d), static_cast<long long>(rem / 3600),
                static_cast<long long>(rem % 3600 / 60), static_cast<long long>(rem % 60));
  return buf;
}

std::optional<std::int64_t> days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

// Parses "YYYY-MM-DDTHH:MM:SSZ" and re-renders it so XML and binary dates
// produce identical strings.
std::optional<std::string> normalize_xml_date(std::string_view text) {
  text = trim(text);
  int y, mo, d, h, mi, s;
  char z = 0;
  const std::string copy(text);
  if (std::sscanf(copy.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &z) != 7 || z != 'Z') {
    return std::nullopt;
  }
  const auto days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
  if (!days || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return render_unix_time(*days * 86400 + h * 3600 + mi * 60 + s);
}

class ManifestCollector {
 public:
  void add(const std::string& key, std::optional<std::string> scalar) {
    if (ends_with(key, kUsageSuffix)) {
      const std::string_view k = trim(key);
      if (!k.empty()) out_.permissions.emplace(k);
    }
    if (!scalar) return;
    if (key == kBundleIdKey) out_.package_name = std::string(trim(*scalar));
    out_.metadata[key] = std::move(*scalar);
  }

  ManifestData take() { return std::move(out_); }

 private:
  ManifestData out_;
};

// ---------------------------------------------------------------------------
// Binary plist

class BinaryPlist {
 public:
  explicit BinaryPlist(ByteView bytes) : r_(bytes, ErrorCode::kBadTrailer) {
    if (bytes.size() < 8 + 32) throw Error(ErrorCode::kBadTrailer, "too short for a binary plist");
    if (std::memcmp(bytes.data(), "bplist00", 8) != 0) {
      throw Error(ErrorCode::kBadTrailer, "unsupported binary plist version");
    }
    const std::size_t t = bytes.size() - 32;
    offset_size_ = r_.u8(t + 6);
    ref_size_ = r_.u8(t + 7);
    num_objects_ = r_.u64be(t + 8);
    top_object_ = r_.u64be(t + 16);
    offset_table_ = r_.u64be(t + 24);
    if (offset_size_ < 1 || offset_size_ > 8 || ref_size_ < 1 || ref_size_ > 8) {
      throw Error(ErrorCode::kBadTrailer, "bad integer widths in trailer");
    }
    if (num_objects_ == 0 || top_object_ >= num_objects_ || offset_table_ < 8 || offset_table_ > t ||
        num_objects_ > (t - offset_table_) / offset_size_) {
      throw Error(ErrorCode::kBadTrailer, "trailer tables do not fit the file");
    }
  }

  ManifestData manifest() const {
    const std::uint64_t root = object_offset(top_object_);
    const std::uint8_t marker = r_.u8(root);
    if ((marker >> 4) != 0xD) throw Error(ErrorCode::kUnsupportedObjectType, "root object is not a dictionary");
    std::uint64_t pos = root + 1;
    const std::uint64_t count = read_count(marker, pos);
    ensure_refs(pos, count * 2);
    ManifestCollector collector;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t key_ref = r_.be(pos + i * ref_size_, ref_size_);
      const std::uint64_t value_ref = r_.be(pos + (count + i) * ref_size_, ref_size_);
      const auto key = is_string(key_ref) ? scalar(key_ref) : std::nullopt;
      if (!key) throw Error(ErrorCode::kUnsupportedObjectType, "dictionary key is not a string");
      collector.add(*key, scalar(value_ref));
    }
    return collector.take();
  }

 private:
  std::uint64_t object_offset(std::uint64_t ref) const {
    if (ref >= num_objects_) throw Error(ErrorCode::kBadTrailer, "object reference out of range");
    const std::uint64_t off = r_.be(offset_table_ + ref * offset_size_, offset_size_);
    if (off < 8 || off >= offset_table_) throw Error(ErrorCode::kBadTrailer, "object offset out of range");
    return off;
  }

  void ensure_refs(std::uint64_t pos, std::uint64_t refs) const {
    if (refs > r_.size() / ref_size_ + 1) throw Error(ErrorCode::kBadTrailer, "container larger than file");
    r_.require(pos, refs * ref_size_, "object references");
  }

  std::uint64_t read_count(std::uint8_t marker, std::uint64_t& pos) const {
    const std::uint64_t low = marker & 0x0F;
    if (low != 0x0F) return low;
    const std::uint8_t int_marker = r_.u8(pos);
    if ((int_marker >> 4) != 0x1 || (int_marker & 0x0F) > 3) {
      throw Error(ErrorCode::kBadTrailer, "bad extended count");
    }
    const unsigned width = 1u << (int_marker & 0x0F);
    const std::uint64_t n = r_.be(pos + 1, width);
    pos += 1 + width;
    return n;
  }

  bool is_string(std::uint64_t ref) const {
    const std::uint8_t type = r_.u8(object_offset(ref)) >> 4;
    return type == 0x5 || type == 0x6;
  }

  // String rendering of a scalar object; nullopt for containers, data and uids.
  std::optional<std::string> scalar(std::uint64_t ref) const {
    const std::uint64_t off = object_offset(ref);
    const std::uint8_t marker = r_.u8(off);
    std::uint64_t pos = off + 1;
    switch (marker >> 4) {
      case 0x0:
        if (marker == 0x08) return "false";
        if (marker == 0x09) return "true";
        if (marker == 0x00 || marker == 0x0F) return std::nullopt;
        break;
      case 0x1: {
        const unsigned width = 1u << (marker & 0x0F);
        if (width > 16) break;
        if (width == 16) return std::to_string(static_cast<std::int64_t>(r_.be(pos + 8, 8)));
        const std::uint64_t v = r_.be(pos, width);
        return width == 8 ? std::to_string(static_cast<std::int64_t>(v)) : std::to_string(v);
      }
      case 0x2: {
        const unsigned width = 1u << (marker & 0x0F);
        if (width == 4) {
          const auto bits = static_cast<std::uint32_t>(r_.be(pos, 4));
          float f;
          std::memcpy(&f, &bits, 4);
          return render_real(f);
        }
        if (width == 8) {
          const std::uint64_t bits = r_.be(pos, 8);
          double d;
          std::memcpy(&d, &bits, 8);
          return render_real(d);
        }
        break;
      }
      case 0x3: {
        if (marker != 0x33) break;
        const std::uint64_t bits = r_.be(pos, 8);
        double d;
        std::memcpy(&d, &bits, 8);
        if (!std::isfinite(d) || std::fabs(d) > 1e13) return std::nullopt;
        return render_unix_time(static_cast<std::int64_t>(std::floor(d)) + kPlistEpochOffset);
      }
      case 0x4: {
        const std::uint64_t n = read_count(marker, pos);
        r_.require(pos, n, "data");
        return std::nullopt;
      }
      case 0x5: {
        const std::uint64_t n = read_count(marker, pos);
        const ByteView s = r_.slice(pos, n, "ascii string");
        return std::string(s.begin(), s.end());
      }
      case 0x6: {
        const std::uint64_t n = read_count(marker, pos);
        if (n > r_.size()) throw Error(ErrorCode::kBadTrailer, "string longer than file");
        return utf16be_to_utf8(r_.slice(pos, n * 2, "utf-16 string"));
      }
      case 0x8:
        return std::nullopt;
      case 0xA:
      case 0xC:
        ensure_refs(pos, read_count(marker, pos));
        return std::nullopt;
      case 0xD:
        ensure_refs(pos, read_count(marker, pos) * 2);
        return std::nullopt;
      default:
        break;
    }
    throw Error(ErrorCode::kUnsupportedObjectType, "object marker 0x" + std::to_string(marker));
  }

  ByteReader r_;
  unsigned offset_size_ = 0;
  unsigned ref_size_ = 0;
  std::uint64_t num_objects_ = 0;
  std::uint64_t top_object_ = 0;
  std::uint64_t offset_table_ = 0;
};

// ---------------------------------------------------------------------------
// XML plist

// Tracks only the top-level dictionary; anything nested below it is checked
// for well-formedness by expat and otherwise skipped.
class XmlPlistHandler {
 public:
  void start(std::string_view name) {
    if (failed_) return;
    ++depth_;
    text_.clear();
    if (depth_ == 1) {
      if (name != "plist") fail("root element must be <plist>");
    } else if (depth_ == 2) {
      if (name != "dict") {
        fail(is_known(name) ? ErrorCode::kUnsupportedObjectType : ErrorCode::kMalformedXml,
             "top-level object must be <dict>");
      }
      seen_dict_ = true;
    } else if (depth_ == 3) {
      if (name == "key") {
        if (pending_key_) fail("<key> without a value");
      } else {
        if (!pending_key_) fail("value without a <key>");
        if (!is_known(name)) fail("unknown element <" + std::string(name) + ">");
      }
    } else if (!is_known(name) && name != "key") {
      fail("unknown element <" + std::string(name) + ">");
    }
  }

  void end(std::string_view name) {
    if (failed_) return;
    if (depth_ == 3) {
      if (name == "key") {
        pending_key_ = text_;
      } else {
        collector_.add(*pending_key_, scalar(name));
        pending_key_.reset();
      }
    } else if (depth_ == 2 && pending_key_) {
      fail("<key> without a value");
    }
    --depth_;
    text_.clear();
  }

  void text(std::string_view s) {
    if (depth_ == 3) text_.append(s);
  }

  ManifestData finish() {
    if (failed_) throw Error(fail_code_, error_);
    if (!seen_dict_) throw Error(ErrorCode::kMalformedXml, "plist has no top-level <dict>");
    return collector_.take();
  }

 private:
  static bool is_known(std::string_view n) {
    return n == "string" || n == "integer" || n == "real" || n == "true" || n == "false" || n == "date" ||
           n == "data" || n == "dict" || n == "array";
  }

  std::optional<std::string> scalar(std::string_view tag) {
    if (tag == "string") return text_;
    if (tag == "true") return "true";
    if (tag == "false") return "false";
    if (tag == "integer") {
      const std::string_view t = trim(text_);
      std::int64_t v = 0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        fail("bad <integer> '" + std::string(t) + "'");
        return std::nullopt;
      }
      return std::to_string(v);
    }
    if (tag == "real") {
      const std::string_view t = trim(text_);
      double v = 0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        fail("bad <real> '" + std::string(t) + "'");
        return std::nullopt;
      }
      return render_real(v);
    }
    if (tag == "date") {
      auto d = normalize_xml_date(text_);
      if (!d) fail("bad <date> '" + text_ + "'");
      return d;
    }
    return std::nullopt;
  }

  void fail(std::string message) { fail(ErrorCode::kMalformedXml, std::move(message)); }
  void fail(ErrorCode code, std::string message) {
    if (!failed_) {
      error_ = std::move(message);
      fail_code_ = code;
    }
    failed_ = true;
  }

  int depth_ = 0;
  bool seen_dict_ = false;
  bool failed_ = false;
  ErrorCode fail_code_ = ErrorCode::kMalformedXml;
  std::string error_;
  std::string text_;
  std::optional<std::string> pending_key_;
  ManifestCollector collector_;
};

struct ExpatDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

ManifestData parse_xml_plist(ByteView bytes) {
  std::unique_ptr<XML_ParserStruct, ExpatDeleter> parser(XML_ParserCreate("UTF-8"));
  XmlPlistHandler handler;
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(
      parser.get(),
      [](void* u, const XML_Char* name, const XML_Char**) { static_cast<XmlPlistHandler*>(u)->start(name); },
      [](void* u, const XML_Char* name) { static_cast<XmlPlistHandler*>(u)->end(name); });
  XML_SetCharacterDataHandler(parser.get(), [](void* u, const XML_Char* s, int len) {
    static_cast<XmlPlistHandler*>(u)->text(std::string_view(s, static_cast<std::size_t>(len)));
  });
  if (XML_Parse(parser.get(), reinterpret_cast<const char*>(bytes.data()), static_cast<int>(bytes.size()),
                XML_TRUE) != XML_STATUS_OK) {
    throw Error(ErrorCode::kMalformedXml, std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) +
                                              " at line " +
                                              std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  return handler.finish();
}

}  // namespace

ManifestData parse_plist(ByteView bytes) {
  if (bytes.size() >= 6 && std::memcmp(bytes.data(), "bplist", 6) == 0) {
    return BinaryPlist(bytes).manifest();
  }
  return parse_xml_plist(bytes);
}

}  // namespace footprint::parsers
