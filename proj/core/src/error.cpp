#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonIntegrableWeight: return "NonIntegrableWeight";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidRootData: return "InvalidRootData";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::TrivialSpace: return "TrivialSpace";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::InvalidProjectivePoint: return "InvalidProjectivePoint";
    case ErrorKind::IntegrationError: return "IntegrationError";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace berezin
