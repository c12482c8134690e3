#ifndef SCNMINE_ERROR_HPP
#define SCNMINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace scn {

enum class ErrorCode {
  MissingColumn,
  MalformedRow,
  DuplicateSample,
  SchemaError,
  DanglingReference,
  TrackTooShort,
  EgoAbsent,
  Unclassifiable,
  FrameOutOfSpan,
  NonSquare,
  NonFinite,
  KindMismatch,
  NoCommonConflict,
  EmptyScenario,
  BandTooNarrow,
  TooFewScenarios,
  DegenerateSpectrum,
  UniverseMismatch,
  InvalidScript,
  ConfigError,
  IoError,
  UsageError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scn

#endif
