#include "bsa/core/error.hpp"

namespace bsa {

std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::ClipTooShort: return "ClipTooShort";
    case Errc::TooFewVideos: return "TooFewVideos";
    case Errc::InvalidManifest: return "InvalidManifest";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFiniteActivation: return "NonFiniteActivation";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::DegenerateClass: return "DegenerateClass";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyData: return "EmptyData";
    case Errc::UnknownGroupKey: return "UnknownGroupKey";
    case Errc::DegenerateMarginals: return "DegenerateMarginals";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::DegeneratePe: return "DegeneratePe";
    case Errc::OverlapError: return "OverlapError";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ZeroDuration: return "ZeroDuration";
    case Errc::MissingColor: return "MissingColor";
    case Errc::UnknownProcedure: return "UnknownProcedure";
    case Errc::TransportError: return "TransportError";
    case Errc::ParseError: return "ParseError";
    case Errc::RateLimited: return "RateLimited";
    case Errc::UnknownAction: return "UnknownAction";
    case Errc::EmptyLog: return "EmptyLog";
    case Errc::AlignmentError: return "AlignmentError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bsa
