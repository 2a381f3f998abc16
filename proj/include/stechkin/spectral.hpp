#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "stechkin/measure.hpp"
#include "stechkin/numerics.hpp"
#include "stechkin/symbol.hpp"

namespace stechkin {

/// Result of integrating a nonnegative weight against a spectral measure.
struct SpectralValue {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate or series tail bound
  bool infinite = false;
};

/// K weights evaluated together so that all integrals share one pass over
/// the measure. exact_order[k] is the exponent of weight k at infinity when
/// it is known exactly (used to decide divergence); zero[k] marks weights
/// that vanish identically.
template <std::size_t K>
struct WeightSet {
  std::function<numerics::Vec<K>(double)> fn;
  std::array<std::optional<double>, K> exact_order{};
  std::array<bool, K> zero{};
};

template <std::size_t K>
std::array<SpectralValue, K> spectral_integrals(const SpectralMeasure& measure,
                                                const WeightSet<K>& weights,
                                                double rel_tol = numerics::kDefaultQuadTol);

/// ∫ weight(t) μ(dt). Throws ConvergenceError when the integral neither
/// converges nor is provably infinite.
SpectralValue spectral_integral(const SpectralMeasure& measure,
                                const std::function<double(double)>& weight,
                                std::optional<double> exact_order = std::nullopt,
                                double rel_tol = numerics::kDefaultQuadTol);

/// ||φ(A) f||; infinite means f is not in D(φ(A)).
SpectralValue norm_phi_f(const SpectralMeasure& measure, const Symbol& phi,
                         double rel_tol = numerics::kDefaultQuadTol);

/// Exact asymptotic exponent of |φ|^2 |ψ|^(2 psi_power) / (1 + τ|ψ|^2)^denom_power.
std::optional<double> ratio_order(const Symbol& phi, const Symbol& psi, int psi_power,
                                  int denom_power);

/// Exponent of the domination ratio: |φ| / (1+|ψ|^2)^{1/2} ~ |t|^(a - b). Uses
/// growth metadata for custom symbols; empty when it is unknown.
std::optional<double> domination_exponent(const Symbol& phi, const Symbol& psi);

enum class Verdict { holds, fails, undecidable, not_applicable };

std::string_view to_string(Verdict v);

struct AdmissibilityReport {
  Verdict domination = Verdict::undecidable;
  double ess_sup_estimate = numerics::kInf;  // sup |φ| / (1 + |ψ|^2)^{1/2} on the support
  Verdict l2_condition = Verdict::not_applicable;
  std::string notes;

  [[nodiscard]] bool domination_holds() const { return domination == Verdict::holds; }
};

AdmissibilityReport check_admissibility(const Symbol& phi, const Symbol& psi,
                                        const SpectralMeasure& measure);

/// Throws AdmissibilityError unless |phi| / (1+|psi|^2)^{1/2} is bounded on the support.
void require_domination(const Symbol& phi, const Symbol& psi, const SpectralMeasure& measure);

}  // namespace stechkin
