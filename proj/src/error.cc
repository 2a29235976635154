#include "footprint/error.h"

namespace footprint {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAnArchive: return "NotAnArchive";
    case ErrorCode::kUnrecognizedLayout: return "UnrecognizedLayout";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kOffsetOutOfBounds: return "OffsetOutOfBounds";
    case ErrorCode::kBadChunkHeader: return "BadChunkHeader";
    case ErrorCode::kStringPoolCorrupt: return "StringPoolCorrupt";
    case ErrorCode::kNotXml: return "NotXml";
    case ErrorCode::kBadTrailer: return "BadTrailer";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kUnsupportedObjectType: return "UnsupportedObjectType";
    case ErrorCode::kTruncatedLoadCommands: return "TruncatedLoadCommands";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDuplicateLibraryId: return "DuplicateLibraryId";
    case ErrorCode::kEmptyPrefix: return "EmptyPrefix";
    case ErrorCode::kUnknownParent: return "UnknownParent";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDuplicateDomain: return "DuplicateDomain";
    case ErrorCode::kUnknownCompany: return "UnknownCompany";
    case ErrorCode::kNotHar: return "NotHar";
    case ErrorCode::kMalformedEntry: return "MalformedEntry";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kBadCount: return "BadCount";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kInconsistentAppId: return "InconsistentAppId";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace footprint
