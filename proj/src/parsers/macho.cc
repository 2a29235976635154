#include "footprint/parsers/macho.h"

#include <cstring>
#include <optional>

#include "footprint/error.h"
#include "parsers/byte_reader.h"

namespace footprint::parsers {
namespace {

constexpr std::uint32_t kMagic32 = 0xfeedface;
constexpr std::uint32_t kMagic64 = 0xfeedfacf;
constexpr std::uint32_t kCigam32 = 0xcefaedfe;
constexpr std::uint32_t kCigam64 = 0xcffaedfe;
constexpr std::uint32_t kFatMagic = 0xcafebabe;
constexpr std::uint32_t kFatMagic64 = 0xcafebabf;
constexpr std::uint32_t kCpuArchAbi64 = 0x01000000;

constexpr std::uint32_t kLcSegment = 0x1;
constexpr std::uint32_t kLcSegment64 = 0x19;
constexpr std::uint32_t kLcEncryptionInfo = 0x21;
constexpr std::uint32_t kLcEncryptionInfo64 = 0x2C;

constexpr std::string_view kClassNameSection = "__objc_classname";

// Reads fields of a thin image in its own byte order.
class Image {
 public:
  Image(ByteView bytes, bool swap) : r_(bytes, ErrorCode::kTruncatedLoadCommands), swap_(swap) {}

  std::uint32_t u32(std::uint64_t off) const { return swap_ ? r_.u32be(off) : r_.u32le(off); }
  std::uint64_t u64(std::uint64_t off) const { return swap_ ? r_.u64be(off) : r_.u64le(off); }
  const ByteReader& reader() const { return r_; }

  std::string_view name16(std::uint64_t off) const {
    const ByteView raw = r_.slice(off, 16, "name");
    const char* p = reinterpret_cast<const char*>(raw.data());
    return std::string_view(p, strnlen(p, 16));
  }

 private:
  ByteReader r_;
  bool swap_;
};

void collect_strings(const ByteReader& r, std::uint64_t offset, std::uint64_t size, ClassNameSet& out) {
  // Section contents are file data; a section pointing past the end means the
  // load commands lie about the file.
  const ByteView sect = r.slice(offset, size, "__objc_classname contents");
  std::size_t start = 0;
  for (std::size_t i = 0; i <= sect.size(); ++i) {
    if (i == sect.size() || sect[i] == 0) {
      if (i > start) out.emplace(reinterpret_cast<const char*>(sect.data() + start), i - start);
      start = i + 1;
    }
  }
}

MachOClassNames parse_thin(ByteView bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kBadMagic, "too short for Mach-O");
  const std::uint32_t magic_le = ByteReader(bytes, ErrorCode::kBadMagic).u32le(0);
  bool is64 = false;
  bool swap = false;
  switch (magic_le) {
    case kMagic32: break;
    case kMagic64: is64 = true; break;
    case kCigam32: swap = true; break;
    case kCigam64: is64 = swap = true; break;
    default: throw Error(ErrorCode::kBadMagic, "not a Mach-O image");
  }
  const Image img(bytes, swap);
  const std::uint64_t header_size = is64 ? 32 : 28;
  img.reader().require(0, header_size, "mach header");
  const std::uint32_t ncmds = img.u32(16);
  const std::uint32_t sizeofcmds = img.u32(20);
  img.reader().require(header_size, sizeofcmds, "load commands");
  const std::uint64_t end = header_size + sizeofcmds;

  ClassNameSet names;
  std::optional<std::uint32_t> cryptid;
  std::uint64_t pos = header_size;
  for (std::uint32_t i = 0; i < ncmds; ++i) {
    if (pos + 8 > end) throw Error(ErrorCode::kTruncatedLoadCommands, "load command past sizeofcmds");
    const std::uint32_t cmd = img.u32(pos);
    const std::uint32_t cmdsize = img.u32(pos + 4);
    if (cmdsize < 8 || cmdsize > end - pos) {
      throw Error(ErrorCode::kTruncatedLoadCommands, "bad cmdsize " + std::to_string(cmdsize));
    }
    if (cmd == kLcEncryptionInfo || cmd == kLcEncryptionInfo64) {
      if (cmdsize < 20) throw Error(ErrorCode::kTruncatedLoadCommands, "short encryption_info");
      cryptid = img.u32(pos + 16);
    } else if (cmd == kLcSegment64 || cmd == kLcSegment) {
      const bool seg64 = cmd == kLcSegment64;
      const std::uint64_t seg_header = seg64 ? 72 : 56;
      const std::uint64_t sect_size = seg64 ? 80 : 68;
      if (cmdsize < seg_header) throw Error(ErrorCode::kTruncatedLoadCommands, "short segment command");
      const std::uint32_t nsects = img.u32(pos + (seg64 ? 64 : 48));
      if (nsects > (cmdsize - seg_header) / sect_size) {
        throw Error(ErrorCode::kTruncatedLoadCommands, "sections overflow segment command");
      }
      for (std::uint32_t s = 0; s < nsects; ++s) {
        const std::uint64_t sp = pos + seg_header + s * sect_size;
        if (img.name16(sp) != kClassNameSection) continue;
        const std::uint64_t size = seg64 ? img.u64(sp + 40) : img.u32(sp + 36);
        const std::uint32_t offset = img.u32(sp + (seg64 ? 48 : 40));
        collect_strings(img.reader(), offset, size, names);
      }
    }
    pos += cmdsize;
  }
  if (cryptid.value_or(0) != 0) return EncryptedBinary{*cryptid};
  return names;
}

}  // namespace

bool is_macho(ByteView bytes) {
  if (bytes.size() < 4) return false;
  const std::uint32_t le = ByteReader(bytes, ErrorCode::kBadMagic).u32le(0);
  const std::uint32_t be = ByteReader(bytes, ErrorCode::kBadMagic).u32be(0);
  return le == kMagic32 || le == kMagic64 || le == kCigam32 || le == kCigam64 || be == kFatMagic ||
         be == kFatMagic64;
}

MachOClassNames extract_macho_class_names(ByteView bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kBadMagic, "too short for Mach-O");
  const ByteReader r(bytes, ErrorCode::kTruncatedLoadCommands);
  const std::uint32_t magic = r.u32be(0);
  if (magic != kFatMagic && magic != kFatMagic64) return parse_thin(bytes);

  const bool fat64 = magic == kFatMagic64;
  const std::uint32_t narch = r.u32be(4);
  const std::uint64_t arch_size = fat64 ? 32 : 20;
  r.require(8, static_cast<std::uint64_t>(narch) * arch_size, "fat_arch table");
  if (narch == 0) throw Error(ErrorCode::kTruncatedLoadCommands, "fat binary without slices");

  std::optional<std::uint32_t> chosen;
  for (std::uint32_t i = 0; i < narch && !chosen; ++i) {
    if (r.u32be(8 + i * arch_size) & kCpuArchAbi64) chosen = i;
  }
  const std::uint64_t a = 8 + chosen.value_or(0) * arch_size;
  const std::uint64_t offset = fat64 ? r.u64be(a + 8) : r.u32be(a + 8);
  const std::uint64_t size = fat64 ? r.u64be(a + 16) : r.u32be(a + 12);
  return parse_thin(r.slice(offset, size, "fat slice"));
}

}  // namespace footprint::parsers
