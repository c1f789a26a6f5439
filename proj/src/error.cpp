#include "hilbert/error.hpp"

namespace hilbert {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::DegenerateChord: return "DegenerateChord";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::DistanceOverflow: return "DistanceOverflow";
    case ErrorCode::NotInSimplex: return "NotInSimplex";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::RayTooShort: return "RayTooShort";
    case ErrorCode::NotEscaping: return "NotEscaping";
    case ErrorCode::BoundedOrbitSuspected: return "BoundedOrbitSuspected";
    case ErrorCode::InsufficientLength: return "InsufficientLength";
    case ErrorCode::MapLeftDomain: return "MapLeftDomain";
    case ErrorCode::ZeroImage: return "ZeroImage";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::OrbitTooShort: return "OrbitTooShort";
    case ErrorCode::MissingCertificate: return "MissingCertificate";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hilbert
