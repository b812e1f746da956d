#pragma once

#include <stdexcept>
#include <string>

namespace ordercdf {

// A point, level or argument outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed space/measure description. `field` names the offending entry
// (e.g. "measure.total_mass" or "measure.atoms[2].at").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The requested operation needs a complete order (a total quantile map).
class UnsupportedSpace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check between two independent routes disagreed.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ordercdf
