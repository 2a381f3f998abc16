#pragma once

#include <string>
#include <vector>

#include "stechkin/numerics.hpp"

namespace stechkin {

/// Classical orthonormal polynomials F_n on I with weight h:
///   Hermite          e^{-t^2}             on R
///   Laguerre(α)      t^α e^{-t}           on [0, inf), α > -1
///   Jacobi(α, β)     (1-t)^α (1+t)^β      on [-1, 1],  α, β > -1
/// Built from the monic three-term recurrence
///   t p_n = p_{n+1} + b_n p_n + c_n p_{n-1}
/// scaled to unit norm. Hermite and Jacobi have positive leading
/// coefficients; Laguerre keeps the classical sign (-1)^n.
class OrthogonalFamily {
 public:
  enum class Kind { hermite, laguerre, jacobi };

  static OrthogonalFamily hermite();
  static OrthogonalFamily laguerre(double alpha);
  static OrthogonalFamily jacobi(double alpha, double beta);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] numerics::Interval interval() const;
  [[nodiscard]] double weight(double t) const;
  /// ∫_I h(t) dt
  [[nodiscard]] double mu0() const { return mu0_; }

  /// Monic recurrence coefficients.
  [[nodiscard]] double b(int n) const;
  [[nodiscard]] double c(int n) const;

  struct Value {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
  };

  /// F_n(t). Throws std::domain_error for t outside I.
  [[nodiscard]] double eval(int n, double t) const;
  /// F_n(t), F_n'(t), F_n''(t) by differentiating the recurrence.
  [[nodiscard]] Value eval_derivatives(int n, double t) const;
  /// F_0(t), ..., F_{max_n}(t).
  [[nodiscard]] std::vector<double> eval_all(int max_n, double t) const;

  /// γ_n in D y'' + (A + D') y' - γ_n y = 0.
  [[nodiscard]] double gamma(int n) const;
  [[nodiscard]] double ode_a(double t) const;
  [[nodiscard]] double ode_d(double t) const;
  [[nodiscard]] double ode_d_prime(double t) const;
  /// |D F_n'' + (A + D') F_n' - γ_n F_n| at t.
  [[nodiscard]] double ode_residual(int n, double t) const;

  /// ∫_I h F_i F_j for 0 <= i, j <= max_n by adaptive quadrature.
  [[nodiscard]] std::vector<std::vector<double>> gram_matrix(int max_n,
                                                             double rel_tol = 1e-12) const;

  /// e with F_n(t)^2 = O(n^e) for fixed interior t.
  [[nodiscard]] double pointwise_square_order() const;

  [[nodiscard]] std::string describe() const;

 private:
  OrthogonalFamily(Kind k, double alpha, double beta);
  void check_point(double t) const;

  Kind kind_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double mu0_ = 1.0;
};

}  // namespace stechkin
