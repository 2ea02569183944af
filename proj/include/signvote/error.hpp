#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signvote {

enum class ErrorKind {
  InvalidArgument,
  ZeroWeightEdge,
  DuplicateEdge,
  DanglingNode,
  MalformedLine,
  InvalidConfig,
  GenerationFailed,
  NotStronglyConnected,
  PeriodicComponent,
  WrongKind,
  TooLarge,
  InvariantViolation,
  NoConvergence,
  SlowMixing,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// the command-line front end can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace signvote
