#pragma once

#include <stdexcept>
#include <string>

namespace stechkin {

/// Symbol pair / measure fails a hypothesis (domination bound, L2 or pointwise
/// summability) or the check cannot be decided from the available metadata.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quadrature or series routine did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A target value lies outside the range of a monotone function.
class OutOfRangeError : public std::runtime_error {
 public:
  enum class Limit { at_zero, at_infinity };

  OutOfRangeError(Limit violated, const std::string& what)
      : std::runtime_error(what), violated_(violated) {}

  [[nodiscard]] Limit violated() const { return violated_; }

 private:
  Limit violated_;
};

/// Malformed input file, descriptor or option.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stechkin
