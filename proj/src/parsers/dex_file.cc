#include "footprint/parsers/dex_file.h"

#include <cstring>

#include "footprint/error.h"
#include "parsers/byte_reader.h"
#include "parsers/text_util.h"

namespace footprint::parsers {
namespace {

constexpr std::size_t kClassDefSize = 32;

bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }

void check_table(const ByteReader& r, std::uint32_t count, std::uint32_t offset,
                 std::uint32_t item_size, const char* what) {
  if (count == 0) return;
  if (!r.in_range(offset, static_cast<std::uint64_t>(count) * item_size)) {
    throw Error(ErrorCode::kOffsetOutOfBounds,
                std::string(what) + " table (" + std::to_string(count) + " entries at " +
                    std::to_string(offset) + ") lies outside the file");
  }
}

// Returns the MUTF-8 bytes of string_ids[index].
ByteView string_data(const ByteReader& r, const DexTables& t, std::uint32_t index) {
  if (index >= t.string_ids_size) {
    throw Error(ErrorCode::kOffsetOutOfBounds, "string index " + std::to_string(index));
  }
  std::uint64_t pos = r.u32le(t.string_ids_off + 4ull * index);
  if (pos >= r.size()) {
    throw Error(ErrorCode::kOffsetOutOfBounds, "string data offset " + std::to_string(pos));
  }
  // Skip the uleb128 utf16 length; the NUL terminator delimits the bytes.
  for (int i = 0; i < 5; ++i) {
    const std::uint8_t b = r.u8(pos++);
    if ((b & 0x80) == 0) break;
    if (i == 4) throw Error(ErrorCode::kOffsetOutOfBounds, "overlong uleb128 string length");
  }
  const ByteView rest = r.data().subspan(static_cast<std::size_t>(pos));
  const void* nul = std::memchr(rest.data(), 0, rest.size());
  if (nul == nullptr) throw Error(ErrorCode::kTruncatedFile, "unterminated string data");
  return rest.first(static_cast<std::size_t>(static_cast<const std::uint8_t*>(nul) - rest.data()));
}

}  // namespace

DexTables read_dex_tables(ByteView dex) {
  const ByteReader r(dex, ErrorCode::kTruncatedFile);
  if (dex.size() >= 8) {
    const bool magic_ok = dex[0] == 'd' && dex[1] == 'e' && dex[2] == 'x' && dex[3] == '\n' &&
                          is_digit(dex[4]) && is_digit(dex[5]) && is_digit(dex[6]) && dex[7] == 0;
    if (!magic_ok) throw Error(ErrorCode::kBadMagic, "not a dex file");
  }
  r.require(0, kDexHeaderSize, "dex header");

  DexTables t;
  t.version.assign(dex.begin() + 4, dex.begin() + 7);
  t.string_ids_size = r.u32le(0x38);
  t.string_ids_off = r.u32le(0x3C);
  t.type_ids_size = r.u32le(0x40);
  t.type_ids_off = r.u32le(0x44);
  t.class_defs_size = r.u32le(0x60);
  t.class_defs_off = r.u32le(0x64);

  check_table(r, t.string_ids_size, t.string_ids_off, 4, "string_ids");
  check_table(r, t.type_ids_size, t.type_ids_off, 4, "type_ids");
  check_table(r, t.class_defs_size, t.class_defs_off, kClassDefSize, "class_defs");
  return t;
}

std::string descriptor_to_class_name(std::string_view d) {
  if (d.size() < 3 || d.front() != 'L' || d.back() != ';') return {};
  std::string name(d.substr(1, d.size() - 2));
  if (name.find(';') != std::string::npos) return {};
  for (char& c : name) {
    if (c == '/') c = '.';
  }
  if (name.front() == '.' || name.back() == '.' || name.find("..") != std::string::npos) return {};
  return name;
}

ClassNameSet extract_dex_class_names(ByteView dex) {
  const DexTables t = read_dex_tables(dex);
  const ByteReader r(dex, ErrorCode::kOffsetOutOfBounds);
  ClassNameSet names;
  for (std::uint32_t i = 0; i < t.class_defs_size; ++i) {
    const std::uint32_t class_idx = r.u32le(t.class_defs_off + kClassDefSize * i);
    if (class_idx >= t.type_ids_size) {
      throw Error(ErrorCode::kOffsetOutOfBounds, "class_idx " + std::to_string(class_idx));
    }
    const std::uint32_t descriptor_idx = r.u32le(t.type_ids_off + 4ull * class_idx);
    const std::string descriptor = sanitize_utf8(string_data(r, t, descriptor_idx));
    std::string name = descriptor_to_class_name(descriptor);
    if (!name.empty()) names.insert(std::move(name));
  }
  return names;
}

}  // namespace footprint::parsers
