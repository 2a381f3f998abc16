#include "stechkin/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stechkin/errors.hpp"
#include "stechkin/measure.hpp"
#include "stechkin/spectral.hpp"

namespace stechkin {

using numerics::kInf;
using numerics::Vec;

namespace {

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
}

void require_l2_admissible(const Symbol& phi, const Symbol& psi, const SpectralMeasure& m,
                           const char* where) {
  const auto rep = check_admissibility(phi, psi, m);
  if (rep.domination_holds() && rep.l2_condition == Verdict::holds) return;
  std::ostringstream os;
  os << where << ": |phi|/(1+|psi|^2)^(1/2) must be bounded (" << to_string(rep.domination)
     << ") and square integrable (" << to_string(rep.l2_condition) << ") for phi="
     << phi.descriptor() << ", psi=" << psi.descriptor();
  if (!rep.notes.empty()) os << "; " << rep.notes;
  throw AdmissibilityError(os.str());
}

// |φ|^2/(1+τ|ψ|^2)^2 and |φψ|^2/(1+τ|ψ|^2)^2
Vec<2> constant_weights(const Symbol& phi, const Symbol& psi, double tau, double s) {
  const double a = phi.modulus(s);
  const double b = psi.modulus(s);
  const double d = 1.0 + tau * b * b;
  const double n = a / d;
  const double m = a * b / d;
  return {n * n, m * m};
}

PointConstants finish(double tau, double n_sq, double m_sq, double n_err, double m_err) {
  PointConstants pc;
  pc.tau = tau;
  pc.N = std::sqrt(std::max(n_sq, 0.0));
  pc.M = std::sqrt(std::max(m_sq, 0.0));
  pc.E = tau * pc.M;
  pc.N_error = pc.N > 0.0 ? 0.5 * n_err / pc.N : std::sqrt(n_err);
  pc.E_error = tau * (pc.M > 0.0 ? 0.5 * m_err / pc.M : std::sqrt(m_err));
  return pc;
}

}  // namespace

TaikovConstants taikov_constants(const TaikovParams& p) {
  if (p.k < 1 || p.r <= p.k) throw ConfigError("Taikov parameters need 1 <= k < r");
  if (!(p.h > 0.0) || !std::isfinite(p.h)) throw ConfigError("h must be positive");
  const double k = p.k;
  const double r = p.r;
  const double s = std::sin(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * r));
  TaikovConstants c;
  c.a = std::sqrt((r - k - 0.5) / (2.0 * r * r) / s);
  c.b = std::sqrt((r + 0.5) / (2.0 * r * r) / s);
  c.N = c.a * std::pow(p.h, -k - 0.5);
  c.E = c.b * std::pow(p.h, r - k - 0.5);
  return c;
}

double taikov_exponent(int k, int r) { return (r - k - 0.5) / (k + 0.5); }

PointConstants line_constants(const Symbol& phi, const Symbol& psi, double tau, double rel_tol) {
  require_tau(tau);
  if (phi.identically_zero()) return finish(tau, 0.0, 0.0, 0.0, 0.0);
  require_l2_admissible(phi, psi, SpectralMeasure::lebesgue(), "line constants");
  numerics::QuadOptions opt;
  opt.rel_tol = rel_tol;
  const auto r = numerics::integrate_vec<2>(
      [&](double s) { return constant_weights(phi, psi, tau, s); }, numerics::kRealLine, opt);
  if (!r.ok())
    throw ConvergenceError("line integral did not converge (" +
                           std::string(numerics::to_string(r.status)) + ")");
  return finish(tau, r.value[0], r.value[1], r.abs_error[0], r.abs_error[1]);
}

FunctionalValue line_extremal_functional(const Symbol& phi, const Symbol& psi, double tau,
                                         const std::function<std::complex<double>(double)>& xhat,
                                         const numerics::Interval& support, double rel_tol) {
  require_tau(tau);
  const auto r = numerics::integrate_complex(
      [&](double s) {
        const std::complex<double> x = xhat(s);
        if (x == 0.0) return std::complex<double>{};
        const double b = psi.modulus(s);
        return phi(s) * x / (1.0 + tau * b * b);
      },
      support, rel_tol, 1e-300);
  if (!r.ok())
    throw ConvergenceError("extremal functional integral did not converge (" +
                           std::string(numerics::to_string(r.status)) + ")");
  return {r.value, r.abs_error_estimate, 0};
}

PointConstants circle_constants(const Symbol& phi, const Symbol& psi, double tau, double rel_tol) {
  require_tau(tau);
  if (phi.identically_zero()) return finish(tau, 0.0, 0.0, 0.0, 0.0);
  require_l2_admissible(phi, psi, SpectralMeasure::lattice_uniform(numerics::IndexSet::integers, 1.0),
                        "circle constants");
  numerics::SeriesOptions opt;
  opt.rel_tol = rel_tol;
  const auto r = numerics::sum_lattice_vec<2>(
      [&](long n) { return constant_weights(phi, psi, tau, static_cast<double>(n)); },
      numerics::IndexSet::integers, opt);
  if (!r.ok())
    throw ConvergenceError("circle series did not converge (" +
                           std::string(numerics::to_string(r.status)) + ")");
  auto pc = finish(tau, r.value[0], r.value[1], r.tail_bound[0], r.tail_bound[1]);
  pc.terms = r.terms_used;
  pc.n_sq_tail = r.tail_bound[0];
  pc.e_sq_tail = tau * tau * r.tail_bound[1];
  return pc;
}

FunctionalValue circle_extremal_functional(const Symbol& phi, const Symbol& psi, double tau,
                                           const std::function<std::complex<double>(long)>& xhat,
                                           double rel_tol) {
  require_tau(tau);
  const auto r = numerics::sum_lattice_complex(
      [&](long n) {
        const std::complex<double> x = xhat(n);
        if (x == 0.0) return std::complex<double>{};
        const double s = static_cast<double>(n);
        const double b = psi.modulus(s);
        return phi(s) * x / (1.0 + tau * b * b);
      },
      numerics::IndexSet::integers, rel_tol);
  if (!r.ok())
    throw ConvergenceError("extremal functional series did not converge (" +
                           std::string(numerics::to_string(r.status)) + ")");
  return {r.value, r.tail_bound, r.terms_used};
}

std::optional<bool> opoly_summable(const OrthogonalFamily& family, const Symbol& phi,
                                   const Symbol& psi) {
  if (phi.identically_zero() || phi.kind() == Symbol::Kind::table) return true;
  const auto e = ratio_order(phi, psi, 0, 1);
  if (!e) return std::nullopt;
  return *e + family.pointwise_square_order() < -1.0;
}

namespace {

// ∫_m^inf s^p ds for p < -1
double power_tail(double m, double p) { return std::pow(m, p + 1.0) / (-p - 1.0); }

}  // namespace

PointConstants opoly_constants(const OrthogonalFamily& family, const Symbol& phi,
                               const Symbol& psi, double tau, double t, int max_n,
                               double rel_tol) {
  require_tau(tau);
  if (max_n < 0) throw ConfigError("max_n must be >= 0");
  const int cap = std::min(max_n, kOpolyMaxTerms);
  const auto f = family.eval_all(cap, t);

  const auto summable = opoly_summable(family, phi, psi);
  if (!summable || !*summable) {
    std::ostringstream os;
    os << "sum over n of |phi(n)|^2 F_n(t)^2/(1+|psi(n)|^2) "
       << (summable ? "diverges" : "cannot be decided") << " for phi=" << phi.descriptor()
       << ", psi=" << psi.descriptor() << " and " << family.describe();
    throw AdmissibilityError(os.str());
  }

  PointConstants pc;
  pc.t = t;
  pc.tau = tau;
  if (phi.identically_zero()) return pc;

  // envelope exponents of the two symbol parts: s^{pn} and s^{pm} (times 1/τ^2)
  const bool finite_phi = phi.kind() == Symbol::Kind::table;
  const long radius = finite_phi ? phi.support_radius().value_or(0) : 0;
  double pn = 0.0, pm = 0.0;
  if (!finite_phi) {
    const double a = phi.alpha();
    const double b = psi.alpha();
    const double env = family.pointwise_square_order();
    pn = env + 2.0 * a - 4.0 * b;
    pm = env + 2.0 * a - 2.0 * b;
  }

  numerics::detail::CompensatedSum sn, sm;
  long done = -1;
  auto extend = [&](long upto) {
    for (long n = done + 1; n <= upto; ++n) {
      const auto w = constant_weights(phi, psi, tau, static_cast<double>(n));
      const double f2 = f[static_cast<std::size_t>(n)] * f[static_cast<std::size_t>(n)];
      sn.add(w[0] * f2);
      sm.add(w[1] * f2);
    }
    done = upto;
  };

  long m = std::min<long>(cap, finite_phi ? radius : 64);
  for (;;) {
    extend(m);
    const double n_sq = sn.value();
    const double e_sq = tau * tau * sm.value();
    double tn = 0.0, te = 0.0;
    if (finite_phi) {
      tn = te = m >= radius ? 0.0 : kInf;
    } else {
      double c = 0.0;
      for (long n = std::max<long>(1, m / 2); n <= m; ++n) {
        const double fn = f[static_cast<std::size_t>(n)];
        c = std::max(c, fn * fn * std::pow(static_cast<double>(n), -family.pointwise_square_order()));
      }
      const double md = static_cast<double>(std::max<long>(m, 1));
      tn = c / (tau * tau) * power_tail(md, pn);
      te = c * power_tail(md, pm);
    }
    pc.n_sq_tail = tn;
    pc.e_sq_tail = te;
    pc.terms = m + 1;
    const bool ok = tn <= rel_tol * n_sq && te <= rel_tol * std::max(e_sq, 1e-300);
    if (ok || m >= cap) {
      pc.converged = ok;
      pc.N = std::sqrt(std::max(n_sq, 0.0));
      pc.M = std::sqrt(std::max(sm.value(), 0.0));
      pc.E = tau * pc.M;
      pc.N_error = pc.N > 0.0 ? 0.5 * tn / pc.N : std::sqrt(tn);
      pc.E_error = pc.E > 0.0 ? 0.5 * te / pc.E : std::sqrt(te);
      return pc;
    }
    m = std::min<long>(cap, 2 * m);
  }
}

FunctionalValue opoly_extremal_functional(const OrthogonalFamily& family, const Symbol& phi,
                                          const Symbol& psi, double tau, double t,
                                          const std::function<double(long)>& x_coeffs,
                                          int max_n) {
  require_tau(tau);
  if (max_n < 0) throw ConfigError("max_n must be >= 0");
  const auto f = family.eval_all(max_n, t);
  numerics::detail::CompensatedSum re, im;
  std::vector<double> mag(static_cast<std::size_t>(max_n) + 1);
  for (long n = 0; n <= max_n; ++n) {
    const double x = x_coeffs(n);
    const double s = static_cast<double>(n);
    const double b = psi.modulus(s);
    const std::complex<double> term =
        x == 0.0 ? std::complex<double>{} : phi(s) * x * f[static_cast<std::size_t>(n)] / (1.0 + tau * b * b);
    re.add(term.real());
    im.add(term.imag());
    mag[static_cast<std::size_t>(n)] = std::abs(term);
  }
  FunctionalValue out{{re.value(), im.value()}, 0.0, static_cast<long>(max_n) + 1};
  if (max_n >= 8) {
    // running maxima over dyadic windows give a monotone envelope of |term|
    auto window_max = [&](long lo, long hi) {
      double v = 0.0;
      for (long n = lo; n <= hi; ++n) v = std::max(v, mag[static_cast<std::size_t>(n)]);
      return v;
    };
    const long m = max_n;
    const auto tail = numerics::detail::envelope_tail(window_max(m / 8, m / 4), window_max(m / 4, m / 2),
                                                      window_max(m / 2, m), m, false);
    out.error = tail.usable ? tail.bound : kInf;
  } else {
    out.error = kInf;
  }
  if (std::all_of(mag.begin(), mag.end(), [](double v) { return v == 0.0; })) out.error = 0.0;
  return out;
}

}  // namespace stechkin
