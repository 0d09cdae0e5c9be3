#pragma once

#include <stdexcept>
#include <string>

namespace princforge {

enum class ErrorKind {
  invalid_input,         // malformed or mathematically inadmissible input
  size_guard,            // input exceeds a documented size guard
  construction_failure,  // an assembly certification or assertion failed
  engine_bug,            // an internal cross-check failed; never expected
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace princforge
