#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

enum class ErrorCode {
  DimensionMismatch,
  InvalidBody,
  DegenerateChord,
  Unbounded,
  OutsideDomain,
  NotOnBoundary,
  DistanceOverflow,
  NotInSimplex,
  OutsideDisk,
  RayTooShort,
  NotEscaping,
  BoundedOrbitSuspected,
  InsufficientLength,
  MapLeftDomain,
  ZeroImage,
  InvalidMap,
  NonPositiveEntry,
  OrbitTooShort,
  MissingCertificate,
  ConfigInvalid,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception; the code is what
/// callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hilbert
