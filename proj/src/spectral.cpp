#include "stechkin/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stechkin/errors.hpp"

namespace stechkin {

using numerics::Interval;
using numerics::kInf;
using numerics::Vec;

namespace {

template <std::size_t K>
bool provably_divergent(const WeightSet<K>& w, std::size_t k, std::optional<double> tail_order) {
  if (w.zero[k]) return false;
  if (!w.exact_order[k] || !tail_order) return false;
  return *w.exact_order[k] + *tail_order >= -1.0;
}

std::string failure_message(const SpectralMeasure& m, numerics::Status s) {
  std::ostringstream os;
  os << "spectral integral over " << m.describe()
     << " did not converge (" << numerics::to_string(s) << ")";
  return os.str();
}

}  // namespace

template <std::size_t K>
std::array<SpectralValue, K> spectral_integrals(const SpectralMeasure& measure,
                                                const WeightSet<K>& weights, double rel_tol) {
  std::array<SpectralValue, K> out{};

  if (auto atoms = measure.finite_atoms()) {
    std::array<numerics::detail::CompensatedSum, K> acc{};
    for (const auto& a : *atoms) {
      if (a.w == 0.0) continue;
      const Vec<K> y = weights.fn(a.t);
      for (std::size_t k = 0; k < K; ++k) {
        if (weights.zero[k]) continue;
        acc[k].add(a.w * y[k]);
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      out[k].value = acc[k].value();
      out[k].error = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out[k].value) *
                     static_cast<double>(atoms->size());
      if (!std::isfinite(out[k].value)) out[k].infinite = true;
    }
    return out;
  }

  std::array<bool, K> mask{};
  if (const auto* lat = std::get_if<LatticeMeasure>(&measure.variant())) {
    bool any = false;
    for (std::size_t k = 0; k < K; ++k) {
      mask[k] = !weights.zero[k] && !provably_divergent(weights, k, lat->weight_order);
      out[k].infinite = provably_divergent(weights, k, lat->weight_order);
      if (out[k].infinite) out[k].value = kInf;
      any = any || mask[k];
    }
    if (!any) return out;
    numerics::SeriesOptions opt;
    opt.rel_tol = rel_tol;
    const auto r = numerics::sum_lattice_vec<K>(
        [&](long n) {
          Vec<K> y{};
          const double w = lat->weight(n);
          if (w == 0.0) return y;
          const Vec<K> v = weights.fn(static_cast<double>(n));
          for (std::size_t k = 0; k < K; ++k) y[k] = mask[k] ? w * v[k] : 0.0;
          return y;
        },
        lat->set, opt);
    if (!r.ok()) throw ConvergenceError(failure_message(measure, r.status));
    for (std::size_t k = 0; k < K; ++k) {
      if (!mask[k]) continue;
      out[k].value = r.value[k];
      out[k].error = r.tail_bound[k];
    }
    return out;
  }

  const auto& dens = std::get<DensityMeasure>(measure.variant());
  for (std::size_t k = 0; k < K; ++k) mask[k] = !weights.zero[k];
  for (const auto& iv : dens.support) {
    if (!iv.bounded()) {
      for (std::size_t k = 0; k < K; ++k) {
        if (mask[k] && provably_divergent(weights, k, dens.density_order)) {
          mask[k] = false;
          out[k].infinite = true;
          out[k].value = kInf;
        }
      }
    }
  }
  for (const auto& iv : dens.support) {
    bool any = false;
    for (std::size_t k = 0; k < K; ++k) any = any || mask[k];
    if (!any) break;
    numerics::QuadOptions opt;
    opt.rel_tol = rel_tol;
    const auto r = numerics::integrate_vec<K>(
        [&](double t) {
          Vec<K> y{};
          const double d = dens.density(t);
          if (d == 0.0) return y;
          const Vec<K> v = weights.fn(t);
          for (std::size_t k = 0; k < K; ++k) y[k] = mask[k] ? d * v[k] : 0.0;
          return y;
        },
        iv, opt);
    if (!r.ok()) throw ConvergenceError(failure_message(measure, r.status));
    for (std::size_t k = 0; k < K; ++k) {
      if (!mask[k]) continue;
      out[k].value += r.value[k];
      out[k].error += r.abs_error[k];
    }
  }
  return out;
}

template std::array<SpectralValue, 1> spectral_integrals<1>(const SpectralMeasure&,
                                                            const WeightSet<1>&, double);
template std::array<SpectralValue, 2> spectral_integrals<2>(const SpectralMeasure&,
                                                            const WeightSet<2>&, double);
template std::array<SpectralValue, 3> spectral_integrals<3>(const SpectralMeasure&,
                                                            const WeightSet<3>&, double);
template std::array<SpectralValue, 4> spectral_integrals<4>(const SpectralMeasure&,
                                                            const WeightSet<4>&, double);

SpectralValue spectral_integral(const SpectralMeasure& measure,
                                const std::function<double(double)>& weight,
                                std::optional<double> exact_order, double rel_tol) {
  WeightSet<1> w;
  w.fn = [&](double t) { return Vec<1>{weight(t)}; };
  w.exact_order[0] = exact_order;
  return spectral_integrals<1>(measure, w, rel_tol)[0];
}

std::optional<double> ratio_order(const Symbol& phi, const Symbol& psi, int psi_power,
                                  int denom_power) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (phi.identically_zero()) return kNegInf;
  const auto a = phi.exact_order();
  if (!a) return std::nullopt;
  if (std::isinf(*a)) return kNegInf;
  switch (psi.kind()) {
    case Symbol::Kind::zero:
    case Symbol::Kind::table:
      return psi_power > 0 ? kNegInf : 2.0 * *a;
    case Symbol::Kind::power: {
      const double b = psi.alpha();
      return 2.0 * *a + 2.0 * psi_power * b - 2.0 * denom_power * b;
    }
    case Symbol::Kind::custom: return std::nullopt;
  }
  return std::nullopt;
}

SpectralValue norm_phi_f(const SpectralMeasure& measure, const Symbol& phi, double rel_tol) {
  if (phi.identically_zero()) return {};
  const auto a = phi.exact_order();
  const auto v = spectral_integral(
      measure,
      [&](double t) {
        const double m = phi.modulus(t);
        return m * m;
      },
      a ? std::optional<double>(2.0 * *a) : std::nullopt, rel_tol);
  if (v.infinite) return {kInf, 0.0, true};
  const double root = std::sqrt(v.value);
  return {root, root > 0.0 ? 0.5 * v.error / root : std::sqrt(v.error), false};
}

std::optional<double> domination_exponent(const Symbol& phi, const Symbol& psi) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (phi.identically_zero() || phi.kind() == Symbol::Kind::table) return kNegInf;
  const auto a = phi.kind() == Symbol::Kind::custom ? phi.growth_order() : phi.exact_order();
  if (!a) return std::nullopt;
  double b = 0.0;
  switch (psi.kind()) {
    case Symbol::Kind::zero:
    case Symbol::Kind::table: b = 0.0; break;
    case Symbol::Kind::power: b = psi.alpha(); break;
    case Symbol::Kind::custom:
      if (!psi.growth_order()) return std::nullopt;
      b = std::max(*psi.growth_order(), 0.0);
      break;
  }
  return *a - b;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::undecidable: return "undecidable";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

AdmissibilityReport check_admissibility(const Symbol& phi, const Symbol& psi,
                                        const SpectralMeasure& measure) {
  AdmissibilityReport rep;
  auto ratio = [&](double t) {
    const double p = phi.modulus(t);
    const double q = psi.modulus(t);
    return p / std::sqrt(1.0 + q * q);
  };

  const auto l2_check = [&]() -> Verdict {
    if (measure.is_discrete()) return Verdict::not_applicable;
    if (phi.identically_zero()) return Verdict::holds;
    try {
      const auto v = spectral_integral(
          measure,
          [&](double t) {
            const double p = phi.modulus(t);
            const double q = psi.modulus(t);
            return p * p / (1.0 + q * q);
          },
          ratio_order(phi, psi, 0, 1));
      return v.infinite ? Verdict::fails : Verdict::holds;
    } catch (const ConvergenceError&) {
      return Verdict::undecidable;
    }
  };

  if (phi.identically_zero()) {
    rep.domination = Verdict::holds;
    rep.ess_sup_estimate = 0.0;
    rep.l2_condition = measure.is_discrete() ? Verdict::not_applicable : Verdict::holds;
    rep.notes = "phi vanishes identically";
    return rep;
  }

  if (auto atoms = measure.finite_atoms()) {
    double s = 0.0;
    for (const auto& a : *atoms)
      if (a.w > 0.0) s = std::max(s, ratio(a.t));
    rep.domination = std::isfinite(s) ? Verdict::holds : Verdict::fails;
    rep.ess_sup_estimate = s;
    rep.l2_condition = l2_check();
    rep.notes = "finite support: supremum over atoms";
    return rep;
  }

  std::vector<Interval> domains;
  if (const auto* lat = std::get_if<LatticeMeasure>(&measure.variant())) {
    domains.push_back(lat->set == numerics::IndexSet::nonnegative ? Interval{0.0, kInf}
                                                                  : numerics::kRealLine);
  } else {
    domains = std::get<DensityMeasure>(measure.variant()).support;
  }

  std::optional<double> exponent;
  if (measure.unbounded_support()) {
    exponent = domination_exponent(phi, psi);
    if (!exponent) {
      rep.domination = Verdict::undecidable;
      rep.l2_condition = Verdict::undecidable;
      rep.notes = "custom symbol without growth_order on unbounded support";
      return rep;
    }
    if (*exponent > 0.0) {
      rep.domination = Verdict::fails;
      rep.ess_sup_estimate = kInf;
      rep.l2_condition = Verdict::fails;
      std::ostringstream os;
      os << "|phi|/(1+|psi|^2)^(1/2) grows like |t|^" << *exponent;
      rep.notes = os.str();
      return rep;
    }
  }

  double s = 0.0;
  numerics::SupOptions sopt;
  sopt.growth_hint = exponent;
  for (const auto& d : domains) {
    const auto r = numerics::sup_search(ratio, d, sopt);
    if (r.infinite) {
      s = kInf;
      break;
    }
    s = std::max(s, r.value);
  }
  rep.ess_sup_estimate = s;
  rep.domination = std::isfinite(s) ? Verdict::holds : Verdict::fails;
  rep.l2_condition = rep.domination_holds() ? l2_check() : Verdict::fails;
  const bool exact = phi.exact_order() && psi.kind() != Symbol::Kind::custom;
  rep.notes = exact ? "decided from exact symbol orders; supremum by grid search"
                    : "decided from growth metadata; supremum by grid search";
  return rep;
}

void require_domination(const Symbol& phi, const Symbol& psi, const SpectralMeasure& measure) {
  const auto rep = check_admissibility(phi, psi, measure);
  if (!rep.domination_holds()) {
    throw AdmissibilityError("condition |phi|/(1+|psi|^2)^(1/2) in L_inf " +
                             std::string(to_string(rep.domination)) + " for phi=" +
                             phi.descriptor() + ", psi=" + psi.descriptor() + " on " +
                             measure.describe() + ": " + rep.notes);
  }
}

}  // namespace stechkin
