#include "stechkin/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "stechkin/core.hpp"
#include "stechkin/errors.hpp"
#include "stechkin/numerics.hpp"

namespace stechkin {

using cplx = std::complex<double>;
using numerics::kInf;

DiagonalInstance DiagonalInstance::make(std::vector<Atom> atoms, Symbol phi, Symbol psi) {
  std::set<double> seen;
  for (const auto& a : atoms) {
    if (!(a.w > 0.0) || !std::isfinite(a.w)) throw ConfigError("diagonal instance needs weights > 0");
    if (!std::isfinite(a.t) || !seen.insert(a.t).second)
      throw ConfigError("diagonal instance needs distinct finite locations");
  }
  DiagonalInstance d{std::move(atoms), std::move(phi), std::move(psi), {}, {}, {}};
  for (const auto& a : d.atoms) {
    d.phi_v.push_back(d.phi(a.t));
    d.psi_v.push_back(d.psi(a.t));
    d.f.push_back(std::sqrt(a.w));
  }
  return d;
}

std::vector<cplx> DiagonalInstance::riesz() const {
  std::vector<cplx> a(size());
  for (std::size_t j = 0; j < size(); ++j) a[j] = std::conj(phi_v[j]) * f[j];
  return a;
}

SpectralMeasure DiagonalInstance::measure() const { return SpectralMeasure::discrete(atoms); }

std::uint64_t DiagonalInstance::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& a : atoms) {
    mix(a.t);
    mix(a.w);
  }
  return h;
}

FunctionalVector FunctionalVector::from(std::vector<cplx> g) {
  double s = 0.0;
  for (const auto& z : g) s += std::norm(z);
  return {std::move(g), std::sqrt(s)};
}

double deviation(const DiagonalInstance& inst, const FunctionalVector& g) {
  if (g.g.size() != inst.size()) throw ConfigError("functional vector has the wrong length");
  const auto a = inst.riesz();
  double s = 0.0;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const double q = std::abs(inst.psi_v[j]);
    const cplx r = a[j] - g.g[j];
    if (q == 0.0) {
      if (r != 0.0) return kInf;
      continue;
    }
    s += std::norm(r) / (q * q);
  }
  return std::sqrt(s);
}

namespace {

struct Split {
  std::vector<cplx> a;
  std::vector<double> q2;  // |ψ_j|^2
  double fixed_sq = 0.0;   // Σ_{ψ_j = 0} |a_j|^2
  double free_sq = 0.0;    // Σ_{ψ_j != 0} |a_j|^2
};

Split split(const DiagonalInstance& inst) {
  Split s;
  s.a = inst.riesz();
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const double q = std::abs(inst.psi_v[j]);
    s.q2.push_back(q * q);
    (q == 0.0 ? s.fixed_sq : s.free_sq) += std::norm(s.a[j]);
  }
  return s;
}

// ||g(λ)||^2 restricted to the ψ != 0 atoms
double free_norm_sq(const Split& s, double lambda) {
  double v = 0.0;
  for (std::size_t j = 0; j < s.a.size(); ++j) {
    if (s.q2[j] == 0.0) continue;
    const double d = 1.0 + lambda * s.q2[j];
    v += std::norm(s.a[j]) / (d * d);
  }
  return v;
}

std::vector<cplx> g_of(const Split& s, double lambda) {
  std::vector<cplx> g(s.a.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = s.a[j] / (1.0 + lambda * s.q2[j]);
  return g;
}

// U(g(λ)) without forming a - g
double deviation_of_lambda(const Split& s, double lambda) {
  double v = 0.0;
  for (std::size_t j = 0; j < s.a.size(); ++j) {
    if (s.q2[j] == 0.0) continue;
    const double d = 1.0 + lambda * s.q2[j];
    v += std::norm(s.a[j]) * lambda * lambda * s.q2[j] / (d * d);
  }
  return std::sqrt(v);
}

double audit(const DiagonalInstance& inst, const FunctionalVector& best, double n_budget,
             std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ inst.fingerprint());
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> scale_pick(0, 3);
  constexpr double kScales[] = {1e-1, 1e-3, 1e-6, 1e-9};
  const double u0 = deviation(inst, best);
  double gain = 0.0;
  for (int s = 0; s < kPerturbationSamples; ++s) {
    const double eps = kScales[scale_pick(rng)] * std::max(n_budget, 1e-300);
    std::vector<cplx> g = best.g;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (inst.psi_v[j] == 0.0) continue;  // any change there makes U infinite
      g[j] += eps * cplx(gauss(rng), gauss(rng));
    }
    auto cand = FunctionalVector::from(std::move(g));
    if (cand.norm > n_budget) {
      const double r = n_budget / cand.norm;
      for (auto& z : cand.g) z *= r;
      cand.norm = n_budget;
    }
    gain = std::max(gain, u0 - deviation(inst, cand));
  }
  return gain;
}

}  // namespace

OracleSolution brute_force_best_approx(const DiagonalInstance& inst, double n_budget,
                                       std::uint64_t seed) {
  if (!(n_budget > 0.0) || !std::isfinite(n_budget)) throw ConfigError("N budget must be positive");
  OracleSolution out;
  const Split s = split(inst);
  const double budget_sq = n_budget * n_budget;

  if (s.fixed_sq > budget_sq) {
    out.infeasible = true;
    out.E = kInf;
    out.g = FunctionalVector::from(g_of(s, 0.0));
    return out;
  }
  if (s.fixed_sq == budget_sq && s.free_sq > 0.0) {
    // λ = inf: the whole budget goes to the ψ = 0 atoms
    std::vector<cplx> g(s.a.size());
    double e = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (s.q2[j] == 0.0)
        g[j] = s.a[j];
      else
        e += std::norm(s.a[j]) / s.q2[j];
    }
    out.lambda = kInf;
    out.g = FunctionalVector::from(std::move(g));
    out.E = std::sqrt(e);
    return out;
  }
  if (s.fixed_sq + s.free_sq <= budget_sq) {
    out.interpolates = true;
    out.g = FunctionalVector::from(s.a);
    out.E = 0.0;
    out.norm_gap = std::max(0.0, out.g.norm - n_budget);
    return out;
  }

  const double target = budget_sq - s.fixed_sq;
  double hi = 1.0;
  while (free_norm_sq(s, hi) >= target) {
    hi *= 2.0;
    if (hi > 1e300) throw ConvergenceError("multiplier bracket did not close");
  }
  double lo = 0.0;
  int it = 0;
  for (; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (free_norm_sq(s, mid) > target ? lo : hi) = mid;
  }
  // the endpoint closer to the constraint
  const double vlo = std::abs(free_norm_sq(s, lo) - target);
  const double vhi = std::abs(free_norm_sq(s, hi) - target);
  out.lambda = vlo < vhi ? lo : hi;
  out.iterations = it;
  out.g = FunctionalVector::from(g_of(s, out.lambda));
  out.E = deviation_of_lambda(s, out.lambda);
  out.norm_gap = std::abs(out.g.norm - n_budget);
  out.perturbation_gain = audit(inst, out.g, n_budget, seed);
  return out;
}

double TheoremResiduals::max_relative() const {
  return std::max({e_vs_tauM, deviation_vs_tauM, norm_vs_N, extremal_equality, hormander_equality,
                   hormander_identity});
}

TheoremResiduals verify_theorems(const DiagonalInstance& inst, double tau, std::uint64_t seed) {
  const Problem p(inst.measure(), inst.phi, inst.psi);
  const auto x = extremal_element(p, tau);
  const auto& c = x.constants;

  TheoremResiduals r;
  r.tau = tau;
  r.N = c.N;
  r.tauM = c.E;
  const auto rel = [](double v, double scale) { return scale > 0.0 ? std::abs(v) / scale : std::abs(v); };

  const Split s = split(inst);
  const auto g_tau = FunctionalVector::from(g_of(s, tau));
  r.deviation_vs_tauM = rel(deviation(inst, g_tau) - c.E, c.E);
  r.norm_vs_N = rel(g_tau.norm - c.N, c.N);

  if (c.N > 0.0) {
    const auto o = brute_force_best_approx(inst, c.N, seed);
    r.oracle_E = o.E;
    r.oracle_lambda = o.lambda;
    r.e_vs_tauM = rel(o.E - c.E, c.E);
    r.lambda_vs_tau = o.interpolates ? 0.0 : rel(o.lambda - tau, tau);
    r.perturbation_gain = o.perturbation_gain;
    for (std::size_t j = 0; j < inst.size(); ++j)
      r.coefficient_max_diff = std::max(r.coefficient_max_diff, std::abs(o.g.g[j] - g_tau.g[j]));
  }

  r.extremal_equality = rel(x.additive_residual, x.functional_value);
  r.hormander_equality = rel(x.hormander_residual, x.functional_value);
  r.hormander_identity = rel(x.identity_residual, x.hormander_coefficient * x.hormander_coefficient);
  return r;
}

InequalityCheck check_inequalities(const DiagonalInstance& inst, double tau, std::mt19937_64& rng,
                                   int samples) {
  const Problem p(inst.measure(), inst.phi, inst.psi);
  const auto c = best_approx(p, tau);
  const double h = hormander_coefficient(p, tau);
  std::normal_distribution<double> gauss;
  InequalityCheck out;
  out.samples = samples;
  for (int s = 0; s < samples; ++s) {
    cplx fx = 0.0;
    double nx = 0.0, npx = 0.0;
    for (std::size_t j = 0; j < inst.size(); ++j) {
      const cplx x(gauss(rng), gauss(rng));
      fx += inst.phi_v[j] * x * inst.f[j];
      nx += std::norm(x);
      npx += std::norm(inst.psi_v[j] * x);
    }
    const double add = additive_bound(c, std::sqrt(nx), std::sqrt(npx));
    const double hor = h * std::sqrt(nx + tau * npx);
    if (add > 0.0) out.additive_max_ratio = std::max(out.additive_max_ratio, std::abs(fx) / add);
    if (hor > 0.0) out.hormander_max_ratio = std::max(out.hormander_max_ratio, std::abs(fx) / hor);
  }
  return out;
}

DiagonalInstance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec) {
  std::uniform_int_distribution<int> count(1, spec.max_atoms);
  std::uniform_real_distribution<double> loc(spec.t_lo, spec.t_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms;
  std::set<double> seen;
  while (static_cast<int>(atoms.size()) < n) {
    const double t = loc(rng);
    if (!seen.insert(t).second) continue;
    atoms.push_back({t, spec.w_max * (1.0 - unit(rng))});
  }
  const double b = spec.alpha_psi_max * (1.0 - unit(rng));
  const double a = b * unit(rng);
  return DiagonalInstance::make(std::move(atoms), Symbol::power(a), Symbol::power(b));
}

double random_tau(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.05, 20.0)(rng);
}

}  // namespace stechkin
