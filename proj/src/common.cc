#include "footprint/common.h"

#include <fstream>
#include <iterator>

#include "footprint/error.h"

namespace footprint {

std::string_view to_string(Platform platform) {
  return platform == Platform::kAndroid ? "android" : "ios";
}

std::string_view to_string(Category category) {
  return category == Category::kChildren ? "children" : "general";
}

Platform parse_platform(std::string_view name) {
  if (name == "android") return Platform::kAndroid;
  if (name == "ios") return Platform::kIos;
  throw Error(ErrorCode::kSchemaError, "unknown platform '" + std::string(name) + "'");
}

Category parse_category(std::string_view name) {
  if (name == "general") return Category::kGeneral;
  if (name == "children") return Category::kChildren;
  throw Error(ErrorCode::kSchemaError, "unknown category '" + std::string(name) + "'");
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path.string());
  return data;
}

std::string read_text_file(const std::filesystem::path& path) {
  Bytes data = read_file(path);
  return std::string(data.begin(), data.end());
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

}  // namespace footprint
