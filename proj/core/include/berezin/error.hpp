#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berezin {

enum class ErrorKind {
  NonIntegrableWeight,
  StencilOutOfDomain,
  DomainError,
  InvalidRootData,
  OutsideDomain,
  TrivialSpace,
  TruncationInsufficient,
  InvalidProjectivePoint,
  IntegrationError,
  ContextMismatch,
  UnsupportedModel,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// that reports can record the reason without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace berezin
