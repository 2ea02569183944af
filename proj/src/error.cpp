#include "signvote/error.hpp"

namespace signvote {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroWeightEdge: return "ZeroWeightEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::DanglingNode: return "DanglingNode";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::PeriodicComponent: return "PeriodicComponent";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SlowMixing: return "SlowMixing";
  }
  return "Unknown";
}

}  // namespace signvote
