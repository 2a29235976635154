#pragma once

#include <cstdint>
#include <variant>

#include "footprint/common.h"

namespace footprint::parsers {

// The binary is FairPlay-encrypted; class names must come from a class dump.
struct EncryptedBinary {
  std::uint32_t cryptid = 0;
  bool operator==(const EncryptedBinary&) const = default;
};

using MachOClassNames = std::variant<ClassNameSet, EncryptedBinary>;

// Objective-C class names from the __objc_classname section of a thin Mach-O
// (32/64-bit, either byte order) or of the first 64-bit slice of a fat
// binary. Throws BadMagic or TruncatedLoadCommands.
MachOClassNames extract_macho_class_names(ByteView bytes);

bool is_macho(ByteView bytes);

}  // namespace footprint::parsers
