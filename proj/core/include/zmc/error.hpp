#pragma once

#include <stdexcept>
#include <string>

namespace zmc {

enum class ErrorKind {
  PoleNotFound,
  DegreeError,
  ParityError,
  BlaschkeOutOfDisk,
  AngularOrderError,
  PoleHit,
  RepeatedAngles,
  OutOfDisk,
  BelowOne,
  OutsideDomain,
  PatternMismatch,
  PathBlocked,
  NoConvergence,
  PreconditionUnmet,
  NoImplicitForm,
  InvalidInput,
  NumericFailure,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // the text without the kind prefix
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace zmc
