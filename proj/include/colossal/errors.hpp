#pragma once

#include <stdexcept>
#include <string>

namespace colossal {

enum class ErrorKind {
  InvalidArgument,
  SieveExhausted,
  NoSolution,
  StreamOrderViolation,
  UnresolvedClass,
  Internal,
  Io,
  CorruptCheckpoint,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Internal-bug guards map to exit code 3 in the CLI.
  bool is_invariant_violation() const noexcept {
    return kind_ == ErrorKind::StreamOrderViolation || kind_ == ErrorKind::UnresolvedClass ||
           kind_ == ErrorKind::Internal;
  }

 private:
  ErrorKind kind_;
};

}  // namespace colossal
