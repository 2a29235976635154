#include "footprint/parsers/zip_archive.h"

#include <zlib.h>

#include <algorithm>

#include "footprint/error.h"
#include "parsers/byte_reader.h"

namespace footprint::parsers {
namespace {

constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::size_t kCentralDirEntrySize = 46;
constexpr std::size_t kLocalHeaderSize = 30;

[[noreturn]] void fail(const std::string& detail) {
  throw Error(ErrorCode::kNotAnArchive, detail);
}

std::size_t find_end_of_central_dir(const ByteReader& r) {
  if (r.size() < kEndOfCentralDirSize) fail("too short for a ZIP archive");
  const std::size_t last = r.size() - kEndOfCentralDirSize;
  const std::size_t first = last > 0xFFFF ? last - 0xFFFF : 0;
  for (std::size_t pos = last + 1; pos-- > first;) {
    if (r.u32le(pos) == kEndOfCentralDirSig) return pos;
  }
  fail("end of central directory not found");
}

}  // namespace

ZipArchive ZipArchive::open(ByteView data) {
  ZipArchive zip(data);
  const ByteReader r(data, ErrorCode::kNotAnArchive);
  const std::size_t eocd = find_end_of_central_dir(r);
  const std::uint16_t count = r.u16le(eocd + 10);
  const std::uint32_t cd_size = r.u32le(eocd + 12);
  const std::uint32_t cd_offset = r.u32le(eocd + 16);
  if (count == 0xFFFF || cd_offset == 0xFFFFFFFF) fail("ZIP64 archives are not supported");
  r.require(cd_offset, cd_size, "central directory");

  std::uint64_t pos = cd_offset;
  zip.entries_.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    if (r.u32le(pos) != kCentralDirSig) fail("bad central directory signature");
    r.require(pos, kCentralDirEntrySize, "central directory entry");
    Entry e;
    const std::uint16_t flags = r.u16le(pos + 8);
    e.method = r.u16le(pos + 10);
    e.crc32 = r.u32le(pos + 16);
    e.compressed_size = r.u32le(pos + 20);
    e.uncompressed_size = r.u32le(pos + 24);
    const std::uint16_t name_len = r.u16le(pos + 28);
    const std::uint16_t extra_len = r.u16le(pos + 30);
    const std::uint16_t comment_len = r.u16le(pos + 32);
    e.local_header_offset = r.u32le(pos + 42);
    const ByteView name = r.slice(pos + kCentralDirEntrySize, name_len, "entry name");
    e.name.assign(name.begin(), name.end());
    if (flags & 0x1) fail("encrypted entry " + e.name);
    zip.entries_.push_back(std::move(e));
    pos += kCentralDirEntrySize + name_len + extra_len + comment_len;
  }
  return zip;
}

const ZipArchive::Entry* ZipArchive::find(std::string_view name) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

Bytes ZipArchive::read(std::string_view name) const {
  const Entry* e = find(name);
  if (e == nullptr) fail("no entry named " + std::string(name));
  return read(*e);
}

Bytes ZipArchive::read(const Entry& e) const {
  const ByteReader r(data_, ErrorCode::kNotAnArchive);
  const std::uint64_t lh = e.local_header_offset;
  if (r.u32le(lh) != kLocalHeaderSig) fail("bad local header for " + e.name);
  r.require(lh, kLocalHeaderSize, "local header");
  const std::uint64_t data_start = lh + kLocalHeaderSize + r.u16le(lh + 26) + r.u16le(lh + 28);
  const ByteView packed = r.slice(data_start, e.compressed_size, "entry data");
  if (e.uncompressed_size > kMaxEntrySize) fail("entry too large: " + e.name);

  Bytes out;
  if (e.method == 0) {
    if (e.compressed_size != e.uncompressed_size) fail("stored entry size mismatch: " + e.name);
    out.assign(packed.begin(), packed.end());
  } else if (e.method == 8) {
    // One spare byte so an empty stream still has somewhere to write and a
    // stream longer than declared is detected.
    out.resize(static_cast<std::size_t>(e.uncompressed_size) + 1);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) fail("inflate init failed");
    zs.next_in = const_cast<Bytef*>(packed.data());
    zs.avail_in = static_cast<uInt>(packed.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != e.uncompressed_size) {
      fail("corrupt deflate stream in " + e.name);
    }
    out.resize(e.uncompressed_size);
  } else {
    fail("unsupported compression method " + std::to_string(e.method) + " in " + e.name);
  }
  const auto crc = ::crc32(0L, out.data(), static_cast<uInt>(out.size()));
  if (crc != e.crc32) fail("CRC mismatch in " + e.name);
  return out;
}

}  // namespace footprint::parsers
