#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delreal {

enum class ErrorCode {
  kAsymmetricEdge,
  kNotConnected,
  kFaceNotFound,
  kSingularSystem,
  kCollinearTriple,
  kNonFinite,
  kAllCollinear,
  kNotGeneralPosition,
  kMissingVariable,
  kBoundTooSmall,
  kUnsatisfiedInput,
  kInvalidArgument,
  kParse,
  kIo,
};

/// Stable upper-case identifier, e.g. "ASYMMETRIC_EDGE".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delreal
