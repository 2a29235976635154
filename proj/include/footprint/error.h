#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace footprint {

// Every failure the library reports carries one of these codes. Parsers never
// signal malformed input any other way.
enum class ErrorCode {
  // Containers and binary formats.
  kNotAnArchive,
  kUnrecognizedLayout,
  kBadMagic,
  kTruncatedFile,
  kOffsetOutOfBounds,
  kBadChunkHeader,
  kStringPoolCorrupt,
  kNotXml,
  kBadTrailer,
  kMalformedXml,
  kUnsupportedObjectType,
  kTruncatedLoadCommands,
  // Databases.
  kSchemaError,
  kDuplicateLibraryId,
  kEmptyPrefix,
  kUnknownParent,
  kCycleDetected,
  kDuplicateDomain,
  kUnknownCompany,
  // Traffic.
  kNotHar,
  kMalformedEntry,
  // Statistics and aggregation.
  kEmptyCorpus,
  kBadCount,
  kEmptyInput,
  kEmptyGroup,
  kInconsistentAppId,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace footprint
