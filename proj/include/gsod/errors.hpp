#pragma once

#include <stdexcept>
#include <string>

namespace gsod {

enum class ErrorKind {
  InvalidArgument,
  InvalidProfile,
  InadmissibleR,
  MapDegenerate,
  NewtonDiverged,
  NotInvertible,
  DegenerateDenominator,
  ShapeDiverged,
  NegativeRadicand,
  GridTooCoarse,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure the library reports carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace gsod
