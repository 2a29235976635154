#include <expat.h>

#include <charconv>
#include <cstring>
#include <memory>
#include <optional>
#include <vector>

#include "footprint/error.h"
#include "footprint/parsers/manifest.h"
#include "parsers/byte_reader.h"
#include "parsers/text_util.h"

namespace footprint::parsers {
namespace {

constexpr std::uint16_t kResStringPoolType = 0x0001;
constexpr std::uint16_t kResXmlType = 0x0003;
constexpr std::uint16_t kResXmlStartElementType = 0x0102;
constexpr std::uint16_t kResXmlResourceMapType = 0x0180;

constexpr std::uint32_t kNoIndex = 0xFFFFFFFF;
constexpr std::uint32_t kUtf8Flag = 1u << 8;

// Res_value data types.
constexpr std::uint8_t kTypeNull = 0x00;
constexpr std::uint8_t kTypeReference = 0x01;
constexpr std::uint8_t kTypeAttribute = 0x02;
constexpr std::uint8_t kTypeString = 0x03;
constexpr std::uint8_t kTypeFloat = 0x04;
constexpr std::uint8_t kTypeDynamicReference = 0x07;
constexpr std::uint8_t kTypeIntDec = 0x10;
constexpr std::uint8_t kTypeIntHex = 0x11;
constexpr std::uint8_t kTypeIntBoolean = 0x12;
constexpr std::uint8_t kTypeFirstColor = 0x1c;
constexpr std::uint8_t kTypeLastColor = 0x1f;

struct Attribute {
  std::string name;  // local name, namespace prefix dropped
  std::string value;
  bool reference = false;
};

std::string_view local_name(std::string_view qualified) {
  const auto colon = qualified.rfind(':');
  return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

// Collects permissions, meta-data and the package name from a stream of
// element starts, whichever encoding produced them.
class ManifestBuilder {
 public:
  void start_element(std::string_view element, const std::vector<Attribute>& attrs) {
    element = local_name(element);
    if (element == "manifest") {
      if (const Attribute* pkg = find(attrs, "package")) out_.package_name = std::string(trim(pkg->value));
    } else if (element == "uses-permission" || element == "uses-permission-sdk-23" ||
               element == "uses-permission-sdk-m") {
      if (const Attribute* name = find(attrs, "name")) {
        const std::string_view permission = trim(name->value);
        if (!permission.empty()) out_.permissions.emplace(permission);
      }
    } else if (element == "meta-data") {
      const Attribute* name = find(attrs, "name");
      if (name == nullptr || trim(name->value).empty()) return;
      const std::string key(trim(name->value));
      const Attribute* value = find(attrs, "value");
      if (value == nullptr) value = find(attrs, "resource");
      if (value == nullptr) return;
      out_.metadata[key] = value->value;
      if (value->reference || (!value->value.empty() && value->value.front() == '@')) {
        out_.unresolved.insert(key);
      } else {
        out_.unresolved.erase(key);
      }
    }
  }

  ManifestData take() { return std::move(out_); }

 private:
  static const Attribute* find(const std::vector<Attribute>& attrs, std::string_view name) {
    for (const Attribute& a : attrs) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  ManifestData out_;
};

// ---------------------------------------------------------------------------
// Binary XML

class StringPool {
 public:
  StringPool() = default;

  StringPool(const ByteReader& r, std::uint64_t chunk, std::uint32_t chunk_size,
             std::uint16_t header_size) {
    if (header_size < 28) throw Error(ErrorCode::kStringPoolCorrupt, "short string pool header");
    const std::uint32_t count = r.u32le(chunk + 8);
    const std::uint32_t flags = r.u32le(chunk + 16);
    const std::uint32_t strings_start = r.u32le(chunk + 20);
    const bool utf8 = (flags & kUtf8Flag) != 0;
    const std::uint64_t offsets = chunk + header_size;
    if (static_cast<std::uint64_t>(count) * 4 > chunk_size - header_size) {
      throw Error(ErrorCode::kStringPoolCorrupt, "string offsets exceed chunk");
    }
    if (count > 0 && strings_start > chunk_size) {
      throw Error(ErrorCode::kStringPoolCorrupt, "strings start outside chunk");
    }
    const ByteReader pool(r.slice(chunk, chunk_size, "string pool"), ErrorCode::kStringPoolCorrupt);
    strings_.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::uint64_t at = static_cast<std::uint64_t>(strings_start) + r.u32le(offsets + 4ull * i);
      strings_.push_back(utf8 ? decode_utf8(pool, at) : decode_utf16(pool, at));
    }
  }

  std::optional<std::string_view> get(std::uint32_t index) const {
    if (index == kNoIndex) return std::nullopt;
    if (index >= strings_.size()) {
      throw Error(ErrorCode::kStringPoolCorrupt, "string index " + std::to_string(index) + " out of range");
    }
    return std::string_view(strings_[index]);
  }

 private:
  static std::string decode_utf8(const ByteReader& pool, std::uint64_t at) {
    // Two length prefixes: UTF-16 units (unused), then bytes.
    auto length = [&](std::uint64_t& pos) -> std::uint32_t {
      std::uint32_t n = pool.u8(pos++);
      if (n & 0x80) n = ((n & 0x7F) << 8) | pool.u8(pos++);
      return n;
    };
    length(at);
    const std::uint32_t bytes = length(at);
    return sanitize_utf8(pool.slice(at, bytes, "utf-8 string"));
  }

  static std::string decode_utf16(const ByteReader& pool, std::uint64_t at) {
    std::uint32_t units = pool.u16le(at);
    at += 2;
    if (units & 0x8000) {
      units = ((units & 0x7FFF) << 16) | pool.u16le(at);
      at += 2;
    }
    return utf16le_to_utf8(pool.slice(at, 2ull * units, "utf-16 string"));
  }

  std::vector<std::string> strings_;
};

std::string render_float(std::uint32_t bits) {
  float f;
  std::memcpy(&f, &bits, sizeof f);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, f);
  return std::string(buf, res.ptr);
}

std::string hex32(std::uint32_t v, std::string_view prefix, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*x", width, v);
  return std::string(prefix) + buf;
}

Attribute read_attribute(const ByteReader& r, std::uint64_t at, const StringPool& pool,
                         const std::vector<std::uint32_t>& resource_ids) {
  Attribute a;
  const std::uint32_t name_idx = r.u32le(at + 4);
  const std::uint32_t raw_idx = r.u32le(at + 8);
  const std::uint8_t type = r.u8(at + 15);
  const std::uint32_t data = r.u32le(at + 16);

  std::uint32_t res_id = name_idx < resource_ids.size() ? resource_ids[name_idx] : 0;
  if (res_id == kAttrName) {
    a.name = "name";
  } else if (res_id == kAttrValue) {
    a.name = "value";
  } else if (res_id == kAttrResource) {
    a.name = "resource";
  } else if (auto s = pool.get(name_idx)) {
    a.name = std::string(local_name(*s));
  }

  switch (type) {
    case kTypeString:
      a.value = std::string(pool.get(data).value_or(""));
      break;
    case kTypeReference:
    case kTypeDynamicReference:
      a.value = hex32(data, "@0x", 8);
      a.reference = true;
      break;
    case kTypeAttribute:
      a.value = hex32(data, "?0x", 8);
      a.reference = true;
      break;
    case kTypeIntDec:
      a.value = std::to_string(static_cast<std::int32_t>(data));
      break;
    case kTypeIntHex:
      a.value = hex32(data, "0x", 1);
      break;
    case kTypeIntBoolean:
      a.value = data != 0 ? "true" : "false";
      break;
    case kTypeFloat:
      a.value = render_float(data);
      break;
    case kTypeNull:
      break;
    default:
      if (type >= kTypeFirstColor && type <= kTypeLastColor) {
        a.value = hex32(data, "#", 8);
      } else if (auto raw = pool.get(raw_idx)) {
        a.value = std::string(*raw);
      } else {
        a.value = std::to_string(data);
      }
  }
  return a;
}

ManifestData parse_binary_xml(ByteView bytes) {
  const ByteReader r(bytes, ErrorCode::kBadChunkHeader);
  if (bytes.size() < 8) throw Error(ErrorCode::kBadChunkHeader, "truncated XML header");
  const std::uint16_t type = r.u16le(0);
  const std::uint16_t header_size = r.u16le(2);
  const std::uint32_t total = r.u32le(4);
  if (type != kResXmlType || header_size < 8 || header_size > total || total > bytes.size()) {
    throw Error(ErrorCode::kBadChunkHeader, "bad XML document header");
  }

  StringPool pool;
  bool have_pool = false;
  std::vector<std::uint32_t> resource_ids;
  ManifestBuilder builder;

  std::uint64_t pos = header_size;
  while (pos + 8 <= total) {
    const std::uint16_t chunk_type = r.u16le(pos);
    const std::uint16_t chunk_header = r.u16le(pos + 2);
    const std::uint32_t chunk_size = r.u32le(pos + 4);
    if (chunk_header < 8 || chunk_size < chunk_header || chunk_size > total - pos) {
      throw Error(ErrorCode::kBadChunkHeader, "bad chunk at offset " + std::to_string(pos));
    }
    if (chunk_type == kResStringPoolType) {
      pool = StringPool(r, pos, chunk_size, chunk_header);
      have_pool = true;
    } else if (chunk_type == kResXmlResourceMapType) {
      const std::uint32_t n = (chunk_size - chunk_header) / 4;
      resource_ids.clear();
      resource_ids.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) resource_ids.push_back(r.u32le(pos + chunk_header + 4ull * i));
    } else if (chunk_type == kResXmlStartElementType) {
      if (!have_pool) throw Error(ErrorCode::kStringPoolCorrupt, "element before string pool");
      const std::uint64_t ext = pos + chunk_header;
      const ByteReader chunk(r.slice(0, pos + chunk_size, "element"), ErrorCode::kBadChunkHeader);
      const std::uint32_t name_idx = chunk.u32le(ext + 4);
      const std::uint16_t attr_start = chunk.u16le(ext + 8);
      const std::uint16_t attr_size = chunk.u16le(ext + 10);
      const std::uint16_t attr_count = chunk.u16le(ext + 12);
      if (attr_count > 0 && attr_size < 20) {
        throw Error(ErrorCode::kBadChunkHeader, "attribute size " + std::to_string(attr_size));
      }
      std::vector<Attribute> attrs;
      attrs.reserve(attr_count);
      for (std::uint16_t i = 0; i < attr_count; ++i) {
        attrs.push_back(read_attribute(chunk, ext + attr_start + static_cast<std::uint64_t>(attr_size) * i,
                                       pool, resource_ids));
      }
      builder.start_element(pool.get(name_idx).value_or(""), attrs);
    }
    pos += chunk_size;
  }
  return builder.take();
}

// ---------------------------------------------------------------------------
// Text XML

struct ExpatDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  std::vector<Attribute> attrs;
  for (int i = 0; atts[i] != nullptr; i += 2) {
    attrs.push_back(Attribute{std::string(local_name(atts[i])), atts[i + 1], false});
  }
  static_cast<ManifestBuilder*>(user)->start_element(name, attrs);
}

ManifestData parse_text_xml(std::string_view text) {
  std::unique_ptr<XML_ParserStruct, ExpatDeleter> parser(XML_ParserCreate("UTF-8"));
  ManifestBuilder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetStartElementHandler(parser.get(), on_start);
  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) != XML_STATUS_OK) {
    throw Error(ErrorCode::kNotXml, std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) +
                                        " at line " +
                                        std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  return builder.take();
}

bool looks_like_text_xml(ByteView bytes) {
  std::size_t i = 0;
  if (bytes.size() >= 3 && bytes[0] == 0xEF && bytes[1] == 0xBB && bytes[2] == 0xBF) i = 3;
  while (i < bytes.size() && (bytes[i] == ' ' || bytes[i] == '\t' || bytes[i] == '\r' || bytes[i] == '\n')) ++i;
  return i < bytes.size() && bytes[i] == '<';
}

}  // namespace

ManifestData parse_android_manifest(ByteView bytes) {
  if (bytes.size() >= 2 && bytes[0] == 0x03 && bytes[1] == 0x00) return parse_binary_xml(bytes);
  if (looks_like_text_xml(bytes)) {
    return parse_text_xml(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
  throw Error(ErrorCode::kNotXml, "neither binary nor text XML");
}

}  // namespace footprint::parsers
