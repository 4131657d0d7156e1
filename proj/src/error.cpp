#include "rwcre/error.hpp"

namespace rwcre {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::RecurrentInput: return "RecurrentInput";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NoResamplingYet: return "NoResamplingYet";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::DegenerateSchedule: return "DegenerateSchedule";
  }
  return "Unknown";
}

}  // namespace rwcre
