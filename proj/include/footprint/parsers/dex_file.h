#pragma once

#include <cstdint>
#include <string>

#include "footprint/common.h"

namespace footprint::parsers {

// Offset tables of a dex container, validated against the buffer they came
// from. Only the tables needed to name classes are kept.
struct DexTables {
  std::string version;  // three digits, e.g. "035"
  std::uint32_t string_ids_size = 0;
  std::uint32_t string_ids_off = 0;
  std::uint32_t type_ids_size = 0;
  std::uint32_t type_ids_off = 0;
  std::uint32_t class_defs_size = 0;
  std::uint32_t class_defs_off = 0;
};

inline constexpr std::size_t kDexHeaderSize = 0x70;

// Throws BadMagic, TruncatedFile or OffsetOutOfBounds.
DexTables read_dex_tables(ByteView dex);

// Dotted names of every class defined in the file ("Lcom/foo/Bar;" becomes
// "com.foo.Bar"; inner classes keep their "$" suffix).
ClassNameSet extract_dex_class_names(ByteView dex);

// "Lcom/foo/Bar;" -> "com.foo.Bar"; empty result for anything that is not a
// well-formed class descriptor.
std::string descriptor_to_class_name(std::string_view descriptor);

}  // namespace footprint::parsers
