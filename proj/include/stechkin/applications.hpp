#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "stechkin/numerics.hpp"
#include "stechkin/orthopoly.hpp"
#include "stechkin/symbol.hpp"

namespace stechkin {

struct TaikovParams {
  int k = 1;
  int r = 2;
  double h = 1.0;
};

struct TaikovConstants {
  double a = 0.0;
  double b = 0.0;
  double N = 0.0;  // a h^{-k-1/2}
  double E = 0.0;  // b h^{r-k-1/2}
};

/// Closed-form constants of the sharp inequality
/// ||x^{(k)}||_C <= a h^{-k-1/2} ||x||_2 + b h^{r-k-1/2} ||x^{(r)}||_2.
TaikovConstants taikov_constants(const TaikovParams& p);

/// (r-k-1/2)/(k+1/2), the exponent making E N^p invariant along τ.
double taikov_exponent(int k, int r);

/// Pointwise constants of a shift-invariant (line, circle) or pointwise
/// (orthogonal expansion) setting. For truncated sums n_sq_tail and
/// e_sq_tail bound the neglected parts of N^2 and E^2.
struct PointConstants {
  std::optional<double> t;
  double tau = 0.0;
  double N = 0.0;
  double M = 0.0;
  double E = 0.0;
  double N_error = 0.0;
  double E_error = 0.0;
  long terms = 0;  // series terms or truncation cutoff + 1; 0 for integrals
  double n_sq_tail = 0.0;
  double e_sq_tail = 0.0;
  bool converged = true;
};

/// N^2 = ∫_R |φ|^2/(1+τ|ψ|^2)^2 ds,  E = τ (∫_R |φψ|^2/(1+τ|ψ|^2)^2 ds)^{1/2}.
/// Throws AdmissibilityError unless |φ|/(1+|ψ|^2)^{1/2} is bounded and in L2(R).
PointConstants line_constants(const Symbol& phi, const Symbol& psi, double tau,
                              double rel_tol = numerics::kDefaultQuadTol);

struct FunctionalValue {
  std::complex<double> value;
  double error = 0.0;  // quadrature error or tail bound
  long terms = 0;
};

/// ∫ φ(s) xhat(s) / (1+τ|ψ(s)|^2) ds over `support` (where xhat lives).
FunctionalValue line_extremal_functional(const Symbol& phi, const Symbol& psi, double tau,
                                         const std::function<std::complex<double>(double)>& xhat,
                                         const numerics::Interval& support = numerics::kRealLine,
                                         double rel_tol = numerics::kDefaultQuadTol);

/// Sums over n in Z of the line integrands. Throws AdmissibilityError unless
/// {|φ(n)|/(1+|ψ(n)|^2)^{1/2}} is bounded and square summable.
PointConstants circle_constants(const Symbol& phi, const Symbol& psi, double tau,
                                double rel_tol = numerics::kDefaultSeriesTol);

/// Σ_{n in Z} φ(n) xhat(n) / (1+τ|ψ(n)|^2).
FunctionalValue circle_extremal_functional(const Symbol& phi, const Symbol& psi, double tau,
                                           const std::function<std::complex<double>(long)>& xhat,
                                           double rel_tol = numerics::kDefaultSeriesTol);

/// Whether Σ_n |φ(n)|^2 F_n(t)^2/(1+|ψ(n)|^2) converges for interior t,
/// decided from the symbol orders and the family's pointwise growth.
/// Empty for custom symbols.
std::optional<bool> opoly_summable(const OrthogonalFamily& family, const Symbol& phi,
                                   const Symbol& psi);

inline constexpr int kOpolyMaxTerms = 10000;

/// N^2 = Σ_{n>=0} |φ(n) F_n(t)|^2/(1+τ|ψ(n)|^2)^2 and E analogously with
/// |φ(n)ψ(n)F_n(t)|^2, truncated once the tail bound falls below rel_tol
/// (at most max_n + 1 terms). Throws AdmissibilityError when the series
/// is not summable or undecidable.
PointConstants opoly_constants(const OrthogonalFamily& family, const Symbol& phi,
                               const Symbol& psi, double tau, double t,
                               int max_n = kOpolyMaxTerms,
                               double rel_tol = numerics::kDefaultSeriesTol);

/// Σ_{n=0}^{max_n} φ(n) x_n F_n(t)/(1+τ|ψ(n)|^2). The error is an envelope
/// estimate of the neglected tail (+inf when the terms do not decay).
FunctionalValue opoly_extremal_functional(const OrthogonalFamily& family, const Symbol& phi,
                                          const Symbol& psi, double tau, double t,
                                          const std::function<double(long)>& x_coeffs,
                                          int max_n = 500);

}  // namespace stechkin
