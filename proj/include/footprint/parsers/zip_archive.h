#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/common.h"

namespace footprint::parsers {

// Read-only view of a ZIP (APK/IPA) archive. Supports stored and deflated
// entries; ZIP64 and encrypted entries are rejected as NotAnArchive.
// The archive references the buffer passed to open(); keep it alive.
class ZipArchive {
 public:
  struct Entry {
    std::string name;
    std::uint16_t method = 0;
    std::uint32_t crc32 = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t local_header_offset = 0;
  };

  // Hard cap on a single inflated entry.
  static constexpr std::uint32_t kMaxEntrySize = 256u << 20;

  static ZipArchive open(ByteView data);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  Bytes read(std::string_view name) const;
  Bytes read(const Entry& entry) const;

 private:
  explicit ZipArchive(ByteView data) : data_(data) {}

  ByteView data_;
  std::vector<Entry> entries_;
};

}  // namespace footprint::parsers
