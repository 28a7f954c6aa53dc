#pragma once

#include <stdexcept>
#include <string>

namespace kerrsq {

/// Inputs outside the domain where a closed form or quadrature is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// w^2 = 1 - s psi0 phi <= 0: the pulse has reached (or passed) its compression focus
/// and the paraxial closed forms have no real value.
class CompressionSingularity : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A run configuration that is malformed or semantically invalid.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace kerrsq

namespace kerrsq {

/// File output failed; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kerrsq
