#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace stechkin {

/// A scalar function of the spectral variable (the φ and ψ of an operator
/// function φ(A)). Immutable after construction.
class Symbol {
 public:
  enum class Kind { power, zero, table, custom };

  /// t -> t^alpha for integer alpha (sign kept), |t|^alpha otherwise.
  static Symbol power(double alpha);
  static Symbol zero();
  /// Values on lattice points; zero at every other point.
  static Symbol table(std::map<long, std::complex<double>> values);
  /// growth_order g promises |fn(t)| <= C (1 + |t|)^g.
  static Symbol custom(std::function<std::complex<double>(double)> fn,
                       std::optional<double> growth_order, std::string label = "custom");

  std::complex<double> operator()(double t) const;
  double modulus(double t) const;

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] std::optional<double> growth_order() const { return growth_; }

  /// Exponent e with |φ(t)| ~ c |t|^e as |t| -> inf, when known exactly.
  /// -inf for finitely supported tables; empty for custom symbols.
  [[nodiscard]] std::optional<double> exact_order() const;

  [[nodiscard]] bool identically_zero() const;
  /// Largest |n| carrying a nonzero table value (0 for the zero symbol).
  [[nodiscard]] std::optional<long> support_radius() const;
  [[nodiscard]] const std::map<long, std::complex<double>>& table_values() const { return table_; }

  [[nodiscard]] std::string descriptor() const;

 private:
  Symbol() = default;

  Kind kind_ = Kind::zero;
  double alpha_ = 0.0;
  bool integer_power_ = false;
  std::optional<double> growth_;
  std::map<long, std::complex<double>> table_;
  std::function<std::complex<double>(double)> fn_;
  std::string label_;
};

}  // namespace stechkin
