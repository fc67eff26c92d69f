#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Every error raised by the library derives from Error and carries a short
// machine-readable code alongside the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed input: bad ids, improper colourings, parse failures.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(const std::string& message)
      : Error("precondition-violated", message) {}
  PreconditionViolated(std::string code, const std::string& message)
      : Error(std::move(code), message) {}
};

// Instance exceeds an exact solver's configured cap.
class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& message) : Error("too-large", message) {}
};

}  // namespace rainbow
