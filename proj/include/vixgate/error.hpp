#pragma once

#include <stdexcept>
#include <string>

namespace vixgate {

// Failure categories. The CLI maps each one onto its own exit code.
enum class ErrorKind {
  kInvalidArgument,  // a precondition on a parameter was violated
  kData,             // malformed, inconsistent, or insufficient input data
  kDegenerate,       // the quantity is mathematically undefined for this input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorKind::kInvalidArgument, message) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorKind::kData, message) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& message)
      : Error(ErrorKind::kDegenerate, message) {}
};

}  // namespace vixgate
