#pragma once

#include <stdexcept>
#include <string>

namespace rstar {

// Precondition or domain violation (maps to CLI exit code 3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input sits on a pole of a rational function.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::string pole)
      : DomainError(what), pole_(std::move(pole)) {}
  const std::string& pole() const noexcept { return pole_; }

 private:
  std::string pole_;
};

// Numerical procedure failed: no sign change, series did not converge, ...
// (maps to CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rstar
