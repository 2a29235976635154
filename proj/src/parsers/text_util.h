#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "footprint/common.h"

namespace footprint::parsers {

// Decodes bytes as UTF-8, replacing every invalid or overlong sequence with
// U+FFFD. Modified UTF-8 (dex) is accepted through the same path; its
// two-byte NUL and surrogate-pair encodings come out as replacement chars.
std::string sanitize_utf8(ByteView bytes);

void append_utf8(std::string& out, char32_t code_point);

// UTF-16LE code units to UTF-8; unpaired surrogates become U+FFFD.
std::string utf16le_to_utf8(ByteView bytes);
std::string utf16be_to_utf8(ByteView bytes);

}  // namespace footprint::parsers
