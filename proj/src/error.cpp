#include "error.hpp"

namespace scn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateSample: return "DuplicateSample";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::TrackTooShort: return "TrackTooShort";
    case ErrorCode::EgoAbsent: return "EgoAbsent";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
    case ErrorCode::FrameOutOfSpan: return "FrameOutOfSpan";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NoCommonConflict: return "NoCommonConflict";
    case ErrorCode::EmptyScenario: return "EmptyScenario";
    case ErrorCode::BandTooNarrow: return "BandTooNarrow";
    case ErrorCode::TooFewScenarios: return "TooFewScenarios";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::InvalidScript: return "InvalidScript";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace scn
