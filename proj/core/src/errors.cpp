#include "extremal/errors.hpp"

namespace extremal {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::AmbiguousOrder: return "AmbiguousOrder";
    case ErrorKind::RangeTooLarge: return "RangeTooLarge";
    case ErrorKind::HasseViolation: return "HasseViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InconsistentLocalData: return "InconsistentLocalData";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace extremal
