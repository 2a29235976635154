#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace footprint {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using ClassNameSet = std::set<std::string>;

enum class Platform { kAndroid, kIos };
enum class Category { kGeneral, kChildren };

std::string_view to_string(Platform platform);
std::string_view to_string(Category category);
// Throws Error(kSchemaError) for unknown names.
Platform parse_platform(std::string_view name);
Category parse_category(std::string_view name);

inline ByteView as_bytes(std::string_view text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

// Throws Error(kIoError).
Bytes read_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string to_lower_ascii(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace footprint
