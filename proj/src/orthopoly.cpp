#include "stechkin/orthopoly.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "stechkin/errors.hpp"

namespace stechkin {

using numerics::kInf;

OrthogonalFamily::OrthogonalFamily(Kind k, double alpha, double beta)
    : kind_(k), alpha_(alpha), beta_(beta) {
  switch (k) {
    case Kind::hermite: mu0_ = std::sqrt(std::numbers::pi); break;
    case Kind::laguerre: mu0_ = std::tgamma(alpha + 1.0); break;
    case Kind::jacobi:
      mu0_ = std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                      std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0));
      break;
  }
}

OrthogonalFamily OrthogonalFamily::hermite() { return {Kind::hermite, 0.0, 0.0}; }

OrthogonalFamily OrthogonalFamily::laguerre(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw ConfigError("Laguerre alpha must exceed -1");
  return {Kind::laguerre, alpha, 0.0};
}

OrthogonalFamily OrthogonalFamily::jacobi(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ConfigError("Jacobi alpha and beta must exceed -1");
  return {Kind::jacobi, alpha, beta};
}

numerics::Interval OrthogonalFamily::interval() const {
  switch (kind_) {
    case Kind::hermite: return numerics::kRealLine;
    case Kind::laguerre: return {0.0, kInf};
    case Kind::jacobi: return {-1.0, 1.0};
  }
  return numerics::kRealLine;
}

double OrthogonalFamily::weight(double t) const {
  switch (kind_) {
    case Kind::hermite: return std::exp(-t * t);
    case Kind::laguerre: return std::pow(t, alpha_) * std::exp(-t);
    case Kind::jacobi: return std::pow(1.0 - t, alpha_) * std::pow(1.0 + t, beta_);
  }
  return 0.0;
}

double OrthogonalFamily::b(int n) const {
  switch (kind_) {
    case Kind::hermite: return 0.0;
    case Kind::laguerre: return 2.0 * n + alpha_ + 1.0;
    case Kind::jacobi: {
      const double ab = alpha_ + beta_;
      if (n == 0) return (beta_ - alpha_) / (ab + 2.0);
      const double s = 2.0 * n + ab;
      return (beta_ * beta_ - alpha_ * alpha_) / (s * (s + 2.0));
    }
  }
  return 0.0;
}

double OrthogonalFamily::c(int n) const {
  if (n <= 0) return 0.0;
  switch (kind_) {
    case Kind::hermite: return 0.5 * n;
    case Kind::laguerre: return n * (n + alpha_);
    case Kind::jacobi: {
      const double ab = alpha_ + beta_;
      if (n == 1) return 4.0 * (1.0 + alpha_) * (1.0 + beta_) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      const double s = 2.0 * n + ab;
      return 4.0 * n * (n + alpha_) * (n + beta_) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
  }
  return 0.0;
}

void OrthogonalFamily::check_point(double t) const {
  const auto iv = interval();
  if (!std::isfinite(t) || t < iv.lo || t > iv.hi) {
    std::ostringstream os;
    os << "t = " << t << " lies outside the interval of " << describe();
    throw std::domain_error(os.str());
  }
}

OrthogonalFamily::Value OrthogonalFamily::eval_derivatives(int n, double t) const {
  if (n < 0) throw ConfigError("polynomial degree must be >= 0");
  check_point(t);
  // orthonormal recurrence t F_k = a_{k+1} F_{k+1} + b_k F_k + a_k F_{k-1}, a_k = sqrt(c_k)
  Value prev{0.0, 0.0, 0.0};
  Value cur{1.0 / std::sqrt(mu0_), 0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double ak1 = std::sqrt(c(k + 1));
    const double ak = std::sqrt(c(k));
    const double x = t - b(k);
    Value next;
    next.f = (x * cur.f - ak * prev.f) / ak1;
    next.d1 = (x * cur.d1 + cur.f - ak * prev.d1) / ak1;
    next.d2 = (x * cur.d2 + 2.0 * cur.d1 - ak * prev.d2) / ak1;
    prev = cur;
    cur = next;
  }
  if (kind_ == Kind::laguerre && n % 2 == 1) {
    cur.f = -cur.f;
    cur.d1 = -cur.d1;
    cur.d2 = -cur.d2;
  }
  return cur;
}

double OrthogonalFamily::eval(int n, double t) const { return eval_derivatives(n, t).f; }

std::vector<double> OrthogonalFamily::eval_all(int max_n, double t) const {
  if (max_n < 0) throw ConfigError("polynomial degree must be >= 0");
  check_point(t);
  std::vector<double> out(static_cast<std::size_t>(max_n) + 1);
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(mu0_);
  out[0] = cur;
  for (int k = 0; k < max_n; ++k) {
    const double next = ((t - b(k)) * cur - std::sqrt(c(k)) * prev) / std::sqrt(c(k + 1));
    prev = cur;
    cur = next;
    out[static_cast<std::size_t>(k) + 1] = cur;
  }
  if (kind_ == Kind::laguerre)
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return out;
}

double OrthogonalFamily::gamma(int n) const {
  switch (kind_) {
    case Kind::hermite: return -2.0 * n;
    case Kind::laguerre: return -static_cast<double>(n);
    case Kind::jacobi: return -n * (n + alpha_ + beta_ + 1.0);
  }
  return 0.0;
}

double OrthogonalFamily::ode_a(double t) const {
  switch (kind_) {
    case Kind::hermite: return -2.0 * t;
    case Kind::laguerre: return alpha_ - t;
    case Kind::jacobi: return beta_ - alpha_ - (alpha_ + beta_) * t;
  }
  return 0.0;
}

double OrthogonalFamily::ode_d(double t) const {
  switch (kind_) {
    case Kind::hermite: return 1.0;
    case Kind::laguerre: return t;
    case Kind::jacobi: return 1.0 - t * t;
  }
  return 0.0;
}

double OrthogonalFamily::ode_d_prime(double t) const {
  switch (kind_) {
    case Kind::hermite: return 0.0;
    case Kind::laguerre: return 1.0;
    case Kind::jacobi: return -2.0 * t;
  }
  return 0.0;
}

double OrthogonalFamily::ode_residual(int n, double t) const {
  const auto v = eval_derivatives(n, t);
  return std::abs(ode_d(t) * v.d2 + (ode_a(t) + ode_d_prime(t)) * v.d1 - gamma(n) * v.f);
}

std::vector<std::vector<double>> OrthogonalFamily::gram_matrix(int max_n, double rel_tol) const {
  if (max_n < 0 || max_n > 63) throw ConfigError("gram matrix size must be in [0, 63]");
  constexpr std::size_t K = 64;
  const auto n = static_cast<std::size_t>(max_n) + 1;
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  numerics::QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_floor = 1e-12;
  // Endpoint singularities are softened by t = cos(theta) on Jacobi and
  // t = u^2 on Laguerre; the weight times the Jacobian then has exponents 2a+1.
  const double a = alpha_, b = beta_;
  numerics::Interval iv = interval();
  std::function<std::pair<double, double>(double)> map = [&](double x) { return std::pair{x, weight(x)}; };
  if (kind_ == Kind::jacobi) {
    iv = {0.0, std::numbers::pi};
    map = [a, b](double th) {
      const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);
      return std::pair{std::cos(th), std::pow(2.0, a + b + 1.0) * std::pow(s, 2.0 * a + 1.0) * std::pow(c, 2.0 * b + 1.0)};
    };
  } else if (kind_ == Kind::laguerre) {
    map = [a](double u) { return std::pair{u * u, 2.0 * std::pow(u, 2.0 * a + 1.0) * std::exp(-u * u)}; };
  }
  // one row per pass: component j of row i is h F_i F_j
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = numerics::integrate_vec<K>(
        [&](double x) {
          numerics::Vec<K> y{};
          const auto [t, h] = map(x);
          // rounding can land a node on a singular endpoint
          if (h == 0.0 || !std::isfinite(h)) return y;
          const auto f = eval_all(max_n, t);
          for (std::size_t j = i; j < n; ++j) y[j] = h * f[i] * f[j];
          return y;
        },
        iv, opt);
    if (!r.ok())
      throw ConvergenceError("gram matrix quadrature for " + describe() + " did not converge (" +
                             std::string(numerics::to_string(r.status)) + ")");
    for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = r.value[j];
  }
  return g;
}

double OrthogonalFamily::pointwise_square_order() const {
  return kind_ == Kind::jacobi ? 0.0 : -0.5;
}

std::string OrthogonalFamily::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::hermite: os << "hermite"; break;
    case Kind::laguerre: os << "laguerre(alpha=" << alpha_ << ")"; break;
    case Kind::jacobi: os << "jacobi(alpha=" << alpha_ << ", beta=" << beta_ << ")"; break;
  }
  return os.str();
}

}  // namespace stechkin
