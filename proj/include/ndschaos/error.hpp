#pragma once

#include <stdexcept>
#include <string>

namespace ndschaos {

enum class ErrorKind {
  NonInvertibleMap,
  DomainViolation,
  EmptyInput,
  InvalidArgument,
  HorizonTooSmall,
  HorizonExceeded,
  EmptyGrid,
  UnsupportedSystem,
  HypothesisUnmet,
  ParseError,
  ValidationError,
  IOError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ndschaos
