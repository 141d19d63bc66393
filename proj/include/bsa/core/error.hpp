#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsa {

/// Every named failure mode in the toolkit. Each maps to a stable string used
/// in CLI diagnostics and logs.
enum class Errc {
  MalformedRecord,
  ClipTooShort,
  TooFewVideos,
  InvalidManifest,
  ShapeMismatch,
  NonFiniteActivation,
  InvalidAlpha,
  EmptyDataset,
  DegenerateClass,
  LengthMismatch,
  EmptyData,
  UnknownGroupKey,
  DegenerateMarginals,
  ZeroVariance,
  DegeneratePe,
  OverlapError,
  OutOfRange,
  ZeroDuration,
  MissingColor,
  UnknownProcedure,
  TransportError,
  ParseError,
  RateLimited,
  UnknownAction,
  EmptyLog,
  AlignmentError,
  IoError,
  InvalidArgument,
};

std::string_view errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bsa
