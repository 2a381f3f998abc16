#include "stechkin/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stechkin/errors.hpp"

namespace stechkin {

using numerics::kInf;
using numerics::Vec;

Problem::Problem(SpectralMeasure measure, Symbol phi, Symbol psi, double rel_tol)
    : measure_(std::move(measure)),
      phi_(std::move(phi)),
      psi_(std::move(psi)),
      rel_tol_(rel_tol),
      report_(check_admissibility(phi_, psi_, measure_)) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0, 1)");
  if (!report_.domination_holds()) {
    throw AdmissibilityError("condition |phi|/(1+|psi|^2)^(1/2) in L_inf " +
                             std::string(to_string(report_.domination)) + " for phi=" +
                             phi_.descriptor() + ", psi=" + psi_.descriptor() + " on " +
                             measure_.describe() + ": " + report_.notes);
  }
}

namespace {

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
}

double sqrt_error(const SpectralValue& v) {
  if (v.infinite) return 0.0;
  const double r = std::sqrt(std::max(v.value, 0.0));
  return r > 0.0 ? 0.5 * v.error / r : std::sqrt(v.error);
}

}  // namespace

SpectralTerms spectral_terms(const Problem& p, double tau) {
  require_tau(tau);
  SpectralTerms out;
  out.tau = tau;
  if (p.phi().identically_zero()) return out;

  WeightSet<3> w;
  w.fn = [&](double t) {
    const double a = p.phi().modulus(t);
    const double b = p.psi().modulus(t);
    const double d = 1.0 + tau * b * b;
    const double n = a / d;
    const double m = a * b / d;
    return Vec<3>{n * n, m * m, a * (a / d)};
  };
  w.exact_order = {ratio_order(p.phi(), p.psi(), 0, 2), ratio_order(p.phi(), p.psi(), 1, 2),
                   ratio_order(p.phi(), p.psi(), 0, 1)};
  w.zero[1] = p.psi().kind() == Symbol::Kind::zero;
  const auto r = spectral_integrals<3>(p.measure(), w, p.rel_tol());
  out.n_sq = r[0];
  out.m_sq = r[1];
  out.h_sq = r[2];
  return out;
}

namespace {

SharpConstants from_terms(const SpectralTerms& s) {
  if (s.n_sq.infinite || s.m_sq.infinite)
    throw ConvergenceError("N or M is infinite: the symbol pair is not admissible for this measure");
  SharpConstants c;
  c.tau = s.tau;
  c.N = std::sqrt(std::max(s.n_sq.value, 0.0));
  c.M = std::sqrt(std::max(s.m_sq.value, 0.0));
  c.E = s.tau * c.M;
  c.N_error = sqrt_error(s.n_sq);
  c.M_error = sqrt_error(s.m_sq);
  c.E_error = s.tau * c.M_error;
  return c;
}

}  // namespace

double n_value(const Problem& p, double tau) { return best_approx(p, tau).N; }
double m_value(const Problem& p, double tau) { return best_approx(p, tau).M; }

SharpConstants best_approx(const Problem& p, double tau) { return from_terms(spectral_terms(p, tau)); }

double n_floor(const Problem& p) {
  const Symbol& phi = p.phi();
  const Symbol& psi = p.psi();
  if (phi.identically_zero()) return 0.0;
  if (psi.kind() == Symbol::Kind::zero) return norm_phi_f(p.measure(), phi, p.rel_tol()).value;

  const auto on_zero_set = [&](double t) {
    if (psi.modulus(t) != 0.0) return 0.0;
    const double a = phi.modulus(t);
    return a * a;
  };
  if (auto atoms = p.measure().finite_atoms()) {
    numerics::detail::CompensatedSum s;
    for (const auto& a : *atoms) s.add(a.w * on_zero_set(a.t));
    return std::sqrt(s.value());
  }
  if (std::holds_alternative<DensityMeasure>(p.measure().variant())) {
    // zero sets of power and custom symbols are taken to be Lebesgue-null;
    // a table symbol vanishes almost everywhere
    if (psi.kind() == Symbol::Kind::table) return norm_phi_f(p.measure(), phi, p.rel_tol()).value;
    return 0.0;
  }
  const auto& lat = std::get<LatticeMeasure>(p.measure().variant());
  if (psi.kind() == Symbol::Kind::power) {
    if (psi.alpha() == 0.0) return 0.0;
    return std::sqrt(lat.weight(0) * on_zero_set(0.0));
  }
  const auto a = phi.exact_order();
  const auto v = spectral_integral(p.measure(), on_zero_set,
                                   a ? std::optional<double>(2.0 * *a) : std::nullopt, p.rel_tol());
  return v.infinite ? kInf : std::sqrt(v.value);
}

TauSolution solve_tau(const Problem& p, double n_target, double rel_tol) {
  if (!(n_target > 0.0) || !std::isfinite(n_target))
    throw ConfigError("N target must be positive and finite");
  std::ostringstream os;
  os.precision(17);

  const auto top = norm_phi_f(p.measure(), p.phi(), p.rel_tol());
  if (!top.infinite && n_target >= top.value) {
    os << "N target " << n_target << " is not below ||phi(A) f|| = " << top.value
       << ", the limit of N(tau) as tau -> 0; E is not defined parametrically there";
    throw OutOfRangeError(OutOfRangeError::Limit::at_zero, os.str());
  }
  const double floor = n_floor(p);
  if (n_target <= floor) {
    os << "N target " << n_target << " is not above lim N(tau) as tau -> inf = " << floor
       << ": psi vanishes on part of the support of phi, so sup |phi|^2/(1+tau|psi|^2)^2 does"
          " not tend to 0";
    throw OutOfRangeError(OutOfRangeError::Limit::at_infinity, os.str());
  }

  TauSolution out;
  out.root = numerics::solve_monotone([&](double tau) { return n_value(p, tau); }, n_target,
                                      rel_tol);
  out.constants = best_approx(p, out.root.tau);
  return out;
}

ExtremalElement extremal_element(const Problem& p, double tau) {
  require_tau(tau);
  ExtremalElement x;
  x.tau = tau;
  const Symbol phi = p.phi();
  const Symbol psi = p.psi();
  x.coeff = [phi, psi, tau](double t) {
    const double b = psi.modulus(t);
    return std::conj(phi(t)) / (1.0 + tau * b * b);
  };
  if (auto atoms = p.measure().finite_atoms()) {
    for (const auto& a : *atoms) x.coefficients.emplace_back(a.t, x.coeff(a.t));
  }

  const auto terms = spectral_terms(p, tau);
  x.constants = from_terms(terms);
  x.hormander_coefficient = std::sqrt(std::max(terms.h_sq.value, 0.0));

  if (!phi.identically_zero()) {
    // norms and functional value straight from the coefficients c(t):
    // ||x||^2 = ∫|c|^2, ||ψx||^2 = ∫|ψc|^2, F(x) = ∫ φ c
    WeightSet<4> w;
    w.fn = [&](double t) {
      const std::complex<double> c = x.coeff(t);
      const std::complex<double> pc = psi(t) * c;
      const std::complex<double> fc = phi(t) * c;
      return Vec<4>{std::norm(c), std::norm(pc), fc.real(), fc.imag()};
    };
    w.exact_order = {ratio_order(phi, psi, 0, 2), ratio_order(phi, psi, 1, 2),
                     ratio_order(phi, psi, 0, 1), ratio_order(phi, psi, 0, 1)};
    w.zero[1] = psi.kind() == Symbol::Kind::zero;
    const auto r = spectral_integrals<4>(p.measure(), w, p.rel_tol());
    x.norm_x = std::sqrt(std::max(r[0].value, 0.0));
    x.norm_psi_x = std::sqrt(std::max(r[1].value, 0.0));
    x.functional_value = std::abs(std::complex<double>(r[2].value, r[3].value));
  }

  const auto& c = x.constants;
  x.additive_residual = x.functional_value - additive_bound(c, x.norm_x, x.norm_psi_x);
  x.hormander_residual =
      x.functional_value - x.hormander_coefficient * std::sqrt(x.norm_x * x.norm_x +
                                                               tau * x.norm_psi_x * x.norm_psi_x);
  x.identity_residual = std::abs(terms.h_sq.value - (terms.n_sq.value + tau * terms.m_sq.value));
  return x;
}

double additive_bound(const SharpConstants& c, double norm_x, double norm_psi_x) {
  if (norm_x < 0.0 || norm_psi_x < 0.0) throw ConfigError("norms must be nonnegative");
  return c.E * norm_psi_x + c.N * norm_x;
}

double hormander_coefficient(const Problem& p, double tau) {
  const auto s = spectral_terms(p, tau);
  const double lhs = s.h_sq.value;
  const double rhs = s.n_sq.value + tau * s.m_sq.value;
  const double slack = 1e-10 * std::max(std::abs(lhs), 1e-300) + s.h_sq.error + s.n_sq.error +
                       tau * s.m_sq.error;
  if (std::abs(lhs - rhs) > slack) {
    std::ostringstream os;
    os.precision(17);
    os << "H^2 = " << lhs << " differs from N^2 + tau M^2 = " << rhs;
    throw std::logic_error(os.str());
  }
  return std::sqrt(std::max(lhs, 0.0));
}

HlpResult hlp_constant(const Symbol& phi, const Symbol& psi, double tau,
                       const numerics::Interval& domain) {
  require_tau(tau);
  HlpResult r;
  if (phi.identically_zero()) {
    r.closed_form = true;
    r.note = "phi vanishes identically";
    return r;
  }

  const auto ratio = [&](double t) {
    const double a = phi.modulus(t);
    const double b = psi.modulus(t);
    return a * a / (1.0 + tau * b * b);
  };

  if (phi.kind() == Symbol::Kind::power &&
      (psi.kind() == Symbol::Kind::power || psi.kind() == Symbol::Kind::zero) &&
      domain.lo == -kInf && domain.hi == kInf) {
    const double a = phi.alpha();
    const double b = psi.kind() == Symbol::Kind::zero ? 0.0 : psi.alpha();
    r.closed_form = true;
    if (a == 0.0 && b == 0.0) {
      r.constant = std::sqrt(1.0 / (1.0 + tau));
      r.argmax = 0.0;
    } else if (a == 0.0) {
      r.constant = 1.0;
      r.argmax = 0.0;
    } else if (a > b) {
      r.infinite = true;
      r.constant = kInf;
      r.note = "|phi|^2/(1+tau|psi|^2) is unbounded: condition |phi|/(1+|psi|^2)^(1/2) in L_inf fails";
    } else if (a == b) {
      r.constant = std::sqrt(1.0 / tau);
      r.at_infinity = true;
      r.note = "supremum approached as |t| -> inf";
    } else {
      // maximize u^{2a}/(1+τu^{2b}): stationary at u^{2b} = a/(τ(b-a))
      const double u2b = a / (tau * (b - a));
      const double u = std::pow(u2b, 1.0 / (2.0 * b));
      r.argmax = u;
      r.constant = std::sqrt(std::pow(u, 2.0 * a) * (b - a) / b);
    }
    return r;
  }

  numerics::SupOptions opt;
  if (domain.lo == -kInf || domain.hi == kInf) {
    if (auto e = domination_exponent(phi, psi)) opt.growth_hint = 2.0 * *e;
  }
  const auto s = numerics::sup_search(ratio, domain, opt);
  r.infinite = s.infinite;
  r.at_infinity = s.at_infinity;
  r.argmax = s.argmax;
  r.constant = s.infinite ? kInf : std::sqrt(std::max(s.value, 0.0));
  if (s.infinite) r.note = "|phi|^2/(1+tau|psi|^2) is unbounded: condition |phi|/(1+|psi|^2)^(1/2) in L_inf fails";
  return r;
}

std::optional<bool> decays_at_infinity(const Symbol& phi, const Symbol& psi) {
  if (phi.identically_zero()) return true;
  const bool phi_power = phi.kind() == Symbol::Kind::power;
  if (phi_power && psi.kind() == Symbol::Kind::power) {
    const double a = phi.alpha();
    const double b = psi.alpha();
    if (b == 0.0) return a == 0.0;
    return a > 0.0 && a <= 2.0 * b;
  }
  if (phi_power && psi.kind() == Symbol::Kind::zero) return false;
  if (phi.kind() == Symbol::Kind::table) {
    if (psi.kind() == Symbol::Kind::custom) return std::nullopt;
    for (const auto& [n, v] : phi.table_values())
      if (std::abs(v) != 0.0 && psi.modulus(static_cast<double>(n)) == 0.0) return false;
    return true;
  }
  return std::nullopt;
}

LemmaReport lemma_suite(const Problem& p, std::span<const double> tau_grid) {
  if (tau_grid.size() < 3) throw ConfigError("lemma suite needs at least three tau values");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    require_tau(tau_grid[i]);
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))
      throw ConfigError("tau grid must be strictly increasing");
  }

  LemmaReport rep;
  std::vector<SpectralTerms> terms;
  for (double tau : tau_grid) {
    terms.push_back(spectral_terms(p, tau));
    const auto c = from_terms(terms.back());
    rep.tau.push_back(tau);
    rep.n.push_back(c.N);
    rep.tau_m.push_back(c.E);
  }

  for (std::size_t i = 0; i + 1 < rep.tau.size(); ++i) {
    const double slack_n = 1e-12 * rep.n[i] + terms[i].n_sq.error + terms[i + 1].n_sq.error;
    if (rep.n[i + 1] > rep.n[i] + slack_n) ++rep.monotonicity_violations;
    const double slack_e = 1e-12 * rep.tau_m[i + 1] + rep.tau[i + 1] * sqrt_error(terms[i + 1].m_sq) +
                           rep.tau[i] * sqrt_error(terms[i].m_sq);
    if (rep.tau_m[i + 1] + slack_e < rep.tau_m[i]) ++rep.tau_m_monotonicity_violations;
    rep.continuity_max_jump = std::max(rep.continuity_max_jump, std::abs(rep.n[i] - rep.n[i + 1]));
  }

  // N(τ1)^2 - N(τ2)^2 = (τ2-τ1) ∫ |φψ|^2 (2+(τ1+τ2)|ψ|^2) / ((1+τ1|ψ|^2)^2 (1+τ2|ψ|^2)^2)
  if (!p.phi().identically_zero() && p.psi().kind() != Symbol::Kind::zero) {
    const auto order = ratio_order(p.phi(), p.psi(), 2, 4);
    for (std::size_t i = 0; i + 1 < rep.tau.size(); ++i) {
      const double t1 = rep.tau[i];
      const double t2 = rep.tau[i + 1];
      const auto j = spectral_integral(
          p.measure(),
          [&](double t) {
            const double a = p.phi().modulus(t);
            const double b = p.psi().modulus(t);
            const double q = a * b / ((1.0 + t1 * b * b) * (1.0 + t2 * b * b));
            return q * q * (2.0 + (t1 + t2) * b * b);
          },
          order, p.rel_tol());
      const double lhs = terms[i].n_sq.value - terms[i + 1].n_sq.value;
      const double rhs = (t2 - t1) * j.value;
      const double scale = std::max(terms[i].n_sq.value, 1e-300);
      rep.difference_identity_residual =
          std::max(rep.difference_identity_residual, std::abs(lhs - rhs) / scale);
    }
  }

  const auto nf = norm_phi_f(p.measure(), p.phi(), p.rel_tol());
  rep.f_in_domain = !nf.infinite;
  rep.norm_phi_f = nf.value;
  rep.limit_tau0 = nf.infinite ? kInf : nf.value;
  rep.n_at_tau_min = rep.n.front();
  rep.n_at_tau_max = rep.n.back();
  rep.limit_tau_inf = n_floor(p);
  rep.decay_condition = decays_at_infinity(p.phi(), p.psi());
  rep.decay_ratio = rep.n_at_tau_min > 0.0 ? rep.n_at_tau_max / rep.n_at_tau_min : 0.0;
  rep.tauM_limit0 = rep.tau_m.front();
  return rep;
}

std::vector<double> geometric_grid(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi > lo) || steps < 2)
    throw ConfigError("geometric grid needs 0 < lo < hi and at least two steps");
  std::vector<double> g(static_cast<std::size_t>(steps));
  const double r = std::log(hi / lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(r * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace stechkin
