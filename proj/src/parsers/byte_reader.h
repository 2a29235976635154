#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "footprint/common.h"
#include "footprint/error.h"

namespace footprint::parsers {

// Bounds-checked random access into a byte buffer. Every out-of-range read
// throws Error with the code chosen at construction, so callers never touch
// memory past the end of the input.
class ByteReader {
 public:
  ByteReader(ByteView data, ErrorCode out_of_range)
      : data_(data), error_(out_of_range) {}

  std::size_t size() const { return data_.size(); }
  ByteView data() const { return data_; }

  bool in_range(std::uint64_t offset, std::uint64_t length) const {
    return offset <= data_.size() && length <= data_.size() - offset;
  }

  void require(std::uint64_t offset, std::uint64_t length, std::string_view what) const {
    if (!in_range(offset, length)) {
      throw Error(error_, std::string(what) + " at offset " + std::to_string(offset) +
                              " (+" + std::to_string(length) + ") exceeds buffer of " +
                              std::to_string(data_.size()) + " bytes");
    }
  }

  ByteView slice(std::uint64_t offset, std::uint64_t length, std::string_view what) const {
    require(offset, length, what);
    return data_.subspan(static_cast<std::size_t>(offset), static_cast<std::size_t>(length));
  }

  std::uint8_t u8(std::uint64_t offset) const {
    require(offset, 1, "u8");
    return data_[offset];
  }

  std::uint16_t u16le(std::uint64_t offset) const { return static_cast<std::uint16_t>(le(offset, 2)); }
  std::uint32_t u32le(std::uint64_t offset) const { return static_cast<std::uint32_t>(le(offset, 4)); }
  std::uint64_t u64le(std::uint64_t offset) const { return le(offset, 8); }
  std::uint16_t u16be(std::uint64_t offset) const { return static_cast<std::uint16_t>(be(offset, 2)); }
  std::uint32_t u32be(std::uint64_t offset) const { return static_cast<std::uint32_t>(be(offset, 4)); }
  std::uint64_t u64be(std::uint64_t offset) const { return be(offset, 8); }

  // Unsigned big-endian integer of 1..8 bytes.
  std::uint64_t be(std::uint64_t offset, unsigned width) const {
    require(offset, width, "integer");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 8) | data_[offset + i];
    return v;
  }

  std::uint64_t le(std::uint64_t offset, unsigned width) const {
    require(offset, width, "integer");
    std::uint64_t v = 0;
    for (unsigned i = width; i > 0; --i) v = (v << 8) | data_[offset + i - 1];
    return v;
  }

  ErrorCode error_code() const { return error_; }

 private:
  ByteView data_;
  ErrorCode error_;
};

}  // namespace footprint::parsers
