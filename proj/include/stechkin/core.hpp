#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stechkin/measure.hpp"
#include "stechkin/numerics.hpp"
#include "stechkin/spectral.hpp"
#include "stechkin/symbol.hpp"

namespace stechkin {

/// A measure and a symbol pair that passed the L_inf admissibility check.
/// Construction throws AdmissibilityError otherwise.
class Problem {
 public:
  Problem(SpectralMeasure measure, Symbol phi, Symbol psi,
          double rel_tol = numerics::kDefaultQuadTol);

  [[nodiscard]] const SpectralMeasure& measure() const { return measure_; }
  [[nodiscard]] const Symbol& phi() const { return phi_; }
  [[nodiscard]] const Symbol& psi() const { return psi_; }
  [[nodiscard]] double rel_tol() const { return rel_tol_; }
  [[nodiscard]] const AdmissibilityReport& admissibility() const { return report_; }

 private:
  SpectralMeasure measure_;
  Symbol phi_, psi_;
  double rel_tol_;
  AdmissibilityReport report_;
};

/// The three spectral integrals every result is built from, evaluated in
/// one pass:  N^2 = ∫|φ|^2/(1+τ|ψ|^2)^2,  M^2 = ∫|φψ|^2/(1+τ|ψ|^2)^2,
/// H^2 = ∫|φ|^2/(1+τ|ψ|^2).
struct SpectralTerms {
  double tau = 0.0;
  SpectralValue n_sq, m_sq, h_sq;
};

SpectralTerms spectral_terms(const Problem& p, double tau);

/// Parametric solution of the best-approximation problem at τ. E = τ M.
struct SharpConstants {
  double tau = 0.0;
  double N = 0.0;
  double M = 0.0;
  double E = 0.0;
  double N_error = 0.0;  // absolute error estimates carried from the integrals
  double M_error = 0.0;
  double E_error = 0.0;
};

double n_value(const Problem& p, double tau);
double m_value(const Problem& p, double tau);
SharpConstants best_approx(const Problem& p, double tau);

/// lim N(τ) as τ -> inf, i.e. (∫_{ψ=0} |φ|^2 dμ)^{1/2}.
double n_floor(const Problem& p);

struct TauSolution {
  SharpConstants constants;
  numerics::MonotoneSolution root;
};

/// τ with N(τ) = n_target. Throws OutOfRangeError when n_target is not in
/// (lim_{τ->inf} N, lim_{τ->0} N).
TauSolution solve_tau(const Problem& p, double n_target,
                      double rel_tol = numerics::kDefaultRootTol);

/// The element x_τ = ∫ conj(φ)/(1+τ|ψ|^2) dE f together with the two
/// equality certificates evaluated from its own coefficients.
struct ExtremalElement {
  double tau = 0.0;
  std::function<std::complex<double>(double)> coeff;
  /// (t, coeff(t)) on the atoms when the measure has finite support.
  std::vector<std::pair<double, std::complex<double>>> coefficients;
  double norm_x = 0.0;            // ||x_τ||
  double norm_psi_x = 0.0;        // ||ψ(A) x_τ||
  double functional_value = 0.0;  // |(φ(A) x_τ, f)|
  SharpConstants constants;
  double hormander_coefficient = 0.0;
  /// |F(x_τ)| - (N ||x_τ|| + τ M ||ψ(A) x_τ||)
  double additive_residual = 0.0;
  /// |F(x_τ)| - H (||x_τ||^2 + τ ||ψ(A) x_τ||^2)^{1/2}
  double hormander_residual = 0.0;
  /// |H^2 - (N^2 + τ M^2)|
  double identity_residual = 0.0;
};

ExtremalElement extremal_element(const Problem& p, double tau);

/// Right-hand side of the additive inequality: E ||ψ(A)x|| + N ||x||.
double additive_bound(const SharpConstants& c, double norm_x, double norm_psi_x);

/// (∫|φ|^2/(1+τ|ψ|^2) dμ)^{1/2}. Verifies H^2 = N^2 + τM^2 within the
/// integration error and throws std::logic_error if it does not hold.
double hormander_coefficient(const Problem& p, double tau);

struct HlpResult {
  double constant = 0.0;  // sup (|φ|^2/(1+τ|ψ|^2))^{1/2}
  bool infinite = false;
  bool closed_form = false;
  std::optional<double> argmax;  // a maximizing |t| (closed form) or t (search)
  bool at_infinity = false;
  std::string note;
};

/// Sharp constant of ||φ(A)x|| <= C (||x||^2 + τ||ψ(A)x||^2)^{1/2} over a
/// spectral domain. Closed form for power pairs on domains containing the
/// stationary point, grid search otherwise.
HlpResult hlp_constant(const Symbol& phi, const Symbol& psi, double tau,
                       const numerics::Interval& domain = numerics::kRealLine);

/// Whether sup_t |φ|^2/(1+τ|ψ|^2)^2 -> 0 as τ -> inf. Empty when undecidable.
std::optional<bool> decays_at_infinity(const Symbol& phi, const Symbol& psi);

struct LemmaReport {
  int monotonicity_violations = 0;       // N(τ_{i+1}) > N(τ_i)
  int tau_m_monotonicity_violations = 0;  // τM(τ) decreasing somewhere
  double continuity_max_jump = 0.0;      // max |N(τ_{i+1}) - N(τ_i)|
  double difference_identity_residual = 0.0;  // relative, max over grid
  double norm_phi_f = 0.0;               // +inf when f is outside D(φ(A))
  bool f_in_domain = true;
  double limit_tau0 = 0.0;               // ||φ(A)f|| or +inf
  double n_at_tau_min = 0.0;
  double n_at_tau_max = 0.0;
  double limit_tau_inf = 0.0;            // lim N as τ -> inf
  std::optional<bool> decay_condition;   // sup-decay condition for the pair
  double decay_ratio = 0.0;              // N(τ_max) / N(τ_min)
  double tauM_limit0 = 0.0;              // τ_min M(τ_min)
  std::vector<double> tau, n, tau_m;
};

/// Requires an increasing grid with at least three positive points.
LemmaReport lemma_suite(const Problem& p, std::span<const double> tau_grid);

/// Geometric grid of `steps` points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int steps);

}  // namespace stechkin
