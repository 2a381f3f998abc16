#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "stechkin/measure.hpp"
#include "stechkin/symbol.hpp"

namespace stechkin {

/// Finite-dimensional diagonal model: A = diag(t_j), f_j = sqrt(w_j).
struct DiagonalInstance {
  std::vector<Atom> atoms;
  Symbol phi = Symbol::zero();
  Symbol psi = Symbol::zero();
  std::vector<std::complex<double>> phi_v, psi_v;
  std::vector<double> f;

  /// Requires w_j > 0 and distinct locations.
  static DiagonalInstance make(std::vector<Atom> atoms, Symbol phi, Symbol psi);

  [[nodiscard]] std::size_t size() const { return atoms.size(); }
  /// Riesz vector of F(x) = (φ(A)x, f): a_j = conj(φ_j) f_j.
  [[nodiscard]] std::vector<std::complex<double>> riesz() const;
  [[nodiscard]] SpectralMeasure measure() const;
  /// Hash of the atoms, used to seed per-instance perturbations.
  [[nodiscard]] std::uint64_t fingerprint() const;
};

/// Representer of the functional x -> Σ x_j conj(g_j).
struct FunctionalVector {
  std::vector<std::complex<double>> g;
  double norm = 0.0;

  static FunctionalVector from(std::vector<std::complex<double>> g);
};

/// U(g) = sup_{||ψ(A)x|| <= 1} |F(x) - g(x)|
///      = (Σ_{ψ_j != 0} |a_j - g_j|^2/|ψ_j|^2)^{1/2}, +inf if g_j != a_j where ψ_j = 0.
double deviation(const DiagonalInstance& inst, const FunctionalVector& g);

struct OracleSolution {
  double E = 0.0;  // +inf when the budget cannot cover the ψ = 0 atoms
  FunctionalVector g;
  double lambda = 0.0;
  bool infeasible = false;
  bool interpolates = false;   // budget covers ||a||: E = 0
  int iterations = 0;
  double norm_gap = 0.0;       // | ||g|| - N_budget |
  double perturbation_gain = 0.0;  // max U(g) - U(g') over sampled feasible g'
};

inline constexpr int kPerturbationSamples = 200;

/// min U(g) subject to ||g|| <= N_budget by bisection on the multiplier λ in
/// g_j = a_j/(1+λ|ψ_j|^2), followed by a randomized perturbation audit.
OracleSolution brute_force_best_approx(const DiagonalInstance& inst, double n_budget,
                                       std::uint64_t seed = 0);

struct TheoremResiduals {
  double tau = 0.0;
  double N = 0.0;
  double tauM = 0.0;
  double oracle_E = 0.0;
  double oracle_lambda = 0.0;
  double e_vs_tauM = 0.0;            // |E_oracle - τM| / τM
  double deviation_vs_tauM = 0.0;    // |U(g_τ) - τM| / τM
  double norm_vs_N = 0.0;            // | ||g_τ|| - N | / N
  double extremal_equality = 0.0;    // |F(x_τ) - (N||x_τ|| + τM||ψx_τ||)| / F(x_τ)
  double hormander_equality = 0.0;   // |F(x_τ) - H (||x_τ||^2 + τ||ψx_τ||^2)^{1/2}| / F(x_τ)
  double hormander_identity = 0.0;   // |H^2 - N^2 - τM^2| / H^2
  double coefficient_max_diff = 0.0; // max_j |g_oracle_j - g_τ_j|
  double lambda_vs_tau = 0.0;        // |λ - τ| / τ
  double perturbation_gain = 0.0;

  [[nodiscard]] double max_relative() const;
};

TheoremResiduals verify_theorems(const DiagonalInstance& inst, double tau, std::uint64_t seed = 0);

struct InequalityCheck {
  int samples = 0;
  double additive_max_ratio = 0.0;   // max |F(x)| / (N||x|| + τM||ψx||)
  double hormander_max_ratio = 0.0;  // max |F(x)| / (H (||x||^2 + τ||ψx||^2)^{1/2})
};

/// Both inequalities on random complex x.
InequalityCheck check_inequalities(const DiagonalInstance& inst, double tau, std::mt19937_64& rng,
                                   int samples);

struct RandomInstanceSpec {
  int max_atoms = 12;
  double t_lo = -5.0, t_hi = 5.0;
  double w_max = 2.0;
  double alpha_psi_max = 4.0;
};

/// Locations uniform in [t_lo, t_hi], weights in (0, w_max], power symbols with
/// α_ψ in (0, alpha_psi_max] and α_φ in [0, α_ψ).
DiagonalInstance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec = {});

/// τ uniform in [0.05, 20].
double random_tau(std::mt19937_64& rng);

}  // namespace stechkin
