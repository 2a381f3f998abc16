#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "stechkin/applications.hpp"
#include "stechkin/core.hpp"
#include "stechkin/errors.hpp"

using namespace stechkin;
using cplx = std::complex<double>;

TEST_CASE("taikov_constants: closed form values") {
  const auto c = taikov_constants({1, 2, 1.0});
  CHECK(c.a == doctest::Approx(0.29730177875068026).epsilon(1e-15));
  CHECK(c.b == doctest::Approx(0.66478698711812356).epsilon(1e-15));
  CHECK(c.N == c.a);
  CHECK(c.E == c.b);
  CHECK(taikov_constants({2, 3, 1.0}).a == doctest::Approx(0.23570226039551584).epsilon(1e-15));
}

TEST_CASE("taikov_constants: scaling in h") {
  const auto c1 = taikov_constants({1, 3, 1.0});
  const auto c2 = taikov_constants({1, 3, 4.0});
  CHECK(c2.N == doctest::Approx(c1.a * std::pow(4.0, -1.5)));
  CHECK(c2.E == doctest::Approx(c1.b * std::pow(4.0, 1.5)));
  const double p = taikov_exponent(1, 3);
  CHECK(p == doctest::Approx(1.0));
  CHECK(c2.E * std::pow(c2.N, p) == doctest::Approx(c1.E * std::pow(c1.N, p)));
}

TEST_CASE("taikov_constants: invalid parameters") {
  CHECK_THROWS_AS(taikov_constants({0, 2, 1.0}), ConfigError);
  CHECK_THROWS_AS(taikov_constants({2, 2, 1.0}), ConfigError);
  CHECK_THROWS_AS(taikov_constants({1, 2, 0.0}), ConfigError);
}

TEST_CASE("line_constants: tau = 1 frozen values") {
  const auto c = line_constants(Symbol::power(1), Symbol::power(2), 1.0);
  CHECK(c.N == doctest::Approx(0.74522504471454509).epsilon(1e-10));
  CHECK(c.E == doctest::Approx(1.2907676405183806).epsilon(1e-10));
  CHECK(c.N_error <= 1e-9 * c.N);
}

TEST_CASE("line_constants: E N^p is invariant in tau (property)") {
  const struct {
    int k, r;
    double product;
  } cases[] = {{1, 2, 1.1702461375}, {1, 3, 0.5235987756}, {2, 3, 1.1891302307}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lt(-2.0, 2.0);
  for (const auto& cs : cases) {
    const double p = taikov_exponent(cs.k, cs.r);
    for (int i = 0; i < 6; ++i) {
      const double tau = std::pow(10.0, lt(rng));
      const auto c = line_constants(Symbol::power(cs.k), Symbol::power(cs.r), tau);
      CHECK(c.E * std::pow(c.N, p) == doctest::Approx(cs.product).epsilon(1e-9));
    }
  }
}

TEST_CASE("line_constants: agree with the Lebesgue best approximation") {
  const Problem p(SpectralMeasure::lebesgue(), Symbol::power(1), Symbol::power(3));
  for (double tau : {0.3, 2.0}) {
    const auto a = line_constants(Symbol::power(1), Symbol::power(3), tau);
    const auto b = best_approx(p, tau);
    CHECK(a.N == doctest::Approx(b.N).epsilon(1e-10));
    CHECK(a.E == doctest::Approx(b.E).epsilon(1e-10));
  }
}

TEST_CASE("line_constants: admissibility failures") {
  CHECK_THROWS_AS(line_constants(Symbol::power(2), Symbol::power(1), 1.0), AdmissibilityError);
  // bounded but not square integrable
  CHECK_THROWS_AS(line_constants(Symbol::power(1), Symbol::power(1), 1.0), AdmissibilityError);
  CHECK_THROWS_AS(line_constants(Symbol::power(1), Symbol::power(2), 0.0), ConfigError);
  CHECK(line_constants(Symbol::zero(), Symbol::power(2), 1.0).N == 0.0);
}

TEST_CASE("line_extremal_functional: matches a dense trapezoid rule") {
  const auto xhat = [](double s) { return cplx(std::exp(-(s - 1.0) * (s - 1.0)), 0.5 * std::exp(-s * s)); };
  const auto r = line_extremal_functional(Symbol::power(1), Symbol::power(2), 0.7, xhat);
  // trapezoid with 1e6 points on [-12, 12]; the integrand is analytic and
  // negligible at the ends
  const int n = 1'000'000;
  const double lo = -12.0, h = 24.0 / n;
  cplx s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = lo + i * h;
    const cplx v = t * xhat(t) / (1.0 + 0.7 * t * t * t * t);
    s += (i == 0 || i == n ? 0.5 : 1.0) * v;
  }
  s *= h;
  CHECK(r.value.real() == doctest::Approx(s.real()).epsilon(1e-10));
  CHECK(std::abs(r.value.imag() - s.imag()) <= 1e-12);
}

TEST_CASE("circle_constants: unit lattice frozen value and tail bookkeeping") {
  const auto c = circle_constants(Symbol::power(1), Symbol::power(2), 1.0);
  CHECK(c.N == doctest::Approx(0.72872971105665574).epsilon(1e-10));
  CHECK(c.terms > 0);
  CHECK(c.n_sq_tail <= 1e-10 * c.N * c.N);
  const Problem p(SpectralMeasure::lattice_uniform(numerics::IndexSet::integers, 1.0), Symbol::power(1),
                  Symbol::power(2));
  CHECK(c.E == doctest::Approx(best_approx(p, 1.0).E).epsilon(1e-9));
}

TEST_CASE("circle_constants: long-double oracle (property)") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> lt(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double tau = std::pow(10.0, lt(rng));
    const auto c = circle_constants(Symbol::power(1), Symbol::power(3), tau);
    long double n_sq = 0.0L;
    for (long n = 200000; n >= 1; --n) {
      const long double x = n;
      const long double d = 1.0L + tau * x * x * x * x * x * x;
      n_sq += 2.0L * x * x / (d * d);
    }
    CHECK(c.N == doctest::Approx(std::sqrt(static_cast<double>(n_sq))).epsilon(1e-10));
  }
}

TEST_CASE("circle_constants: admissibility") {
  CHECK_THROWS_AS(circle_constants(Symbol::power(2), Symbol::power(1), 1.0), AdmissibilityError);
  CHECK_THROWS_AS(circle_constants(Symbol::power(1), Symbol::power(1), 1.0), AdmissibilityError);
}

TEST_CASE("circle_extremal_functional: direct sum") {
  const auto xhat = [](long n) { return cplx(std::pow(2.0, -std::abs(static_cast<double>(n))), 0.0); };
  const auto r = circle_extremal_functional(Symbol::power(2), Symbol::power(2), 1.5, xhat);
  long double s = 1.0L * 0.0L;
  for (long n = 200; n >= 1; --n) {
    const long double x = n;
    s += 2.0L * x * x * std::pow(2.0L, -x) / (1.0L + 1.5L * x * x * x * x);
  }
  CHECK(r.value.real() == doctest::Approx(static_cast<double>(s)).epsilon(1e-10));
  CHECK(r.value.imag() == 0.0);
}

TEST_CASE("opoly_summable: orders against family growth") {
  const auto h = OrthogonalFamily::hermite();
  const auto j = OrthogonalFamily::jacobi(0.0, 0.0);
  CHECK(*opoly_summable(h, Symbol::power(1), Symbol::power(2)));
  CHECK_FALSE(*opoly_summable(h, Symbol::power(1), Symbol::power(1.2)));
  CHECK_FALSE(*opoly_summable(j, Symbol::power(1), Symbol::power(1.5)));
  CHECK(*opoly_summable(j, Symbol::power(1), Symbol::power(1.6)));
  CHECK(*opoly_summable(j, Symbol::table({{3, 1.0}}), Symbol::zero()));
  CHECK_FALSE(opoly_summable(h, Symbol::custom([](double t) { return t; }, 1.0), Symbol::power(2)));
}

TEST_CASE("opoly_constants: long-double direct sum") {
  const OrthogonalFamily fams[] = {OrthogonalFamily::hermite(), OrthogonalFamily::laguerre(0.5),
                                   OrthogonalFamily::jacobi(0.5, -0.5)};
  for (const auto& fam : fams) {
    const double t = fam.kind() == OrthogonalFamily::Kind::laguerre ? 1.2 : 0.3;
    const double tau = 0.8;
    const auto c = opoly_constants(fam, Symbol::power(1), Symbol::power(2), tau, t);
    // the E series decays like n^-2 or slower, so 1e-10 is out of reach within the cap
    CHECK_FALSE(c.converged);
    CHECK(c.terms == kOpolyMaxTerms + 1);
    const auto f = fam.eval_all(kOpolyMaxTerms, t);
    long double n_sq = 0.0L, m_sq = 0.0L;
    for (long n = kOpolyMaxTerms; n >= 0; --n) {
      const long double x = n;
      const long double d = 1.0L + tau * x * x * x * x;
      const long double f2 = static_cast<long double>(f[static_cast<std::size_t>(n)]) * f[static_cast<std::size_t>(n)];
      n_sq += x * x * f2 / (d * d);
      m_sq += x * x * x * x * x * x * f2 / (d * d);
    }
    CHECK(c.N == doctest::Approx(std::sqrt(static_cast<double>(n_sq))).epsilon(1e-9));
    CHECK(c.E == doctest::Approx(tau * std::sqrt(static_cast<double>(m_sq))).epsilon(1e-12));
    CHECK(c.n_sq_tail <= 1e-10 * c.N * c.N);
    CHECK(std::isfinite(c.e_sq_tail));
    CHECK(c.E_error > 0.0);
  }
}

TEST_CASE("opoly_constants: fast decay converges early") {
  const auto c = opoly_constants(OrthogonalFamily::hermite(), Symbol::power(1), Symbol::power(5), 1.0, 0.2);
  CHECK(c.converged);
  CHECK(c.terms < kOpolyMaxTerms);
  CHECK(c.e_sq_tail <= 1e-10 * c.E * c.E);
}

TEST_CASE("opoly_constants: table phi equals a finite sum") {
  const auto fam = OrthogonalFamily::jacobi(0.0, 0.0);
  const auto phi = Symbol::table({{0, 1.0}, {2, {0.0, 2.0}}});
  const auto c = opoly_constants(fam, phi, Symbol::power(1), 1.0, 0.25);
  const double f0 = fam.eval(0, 0.25), f2 = fam.eval(2, 0.25);
  const double n_sq = f0 * f0 + 4.0 * f2 * f2 / 25.0;
  CHECK(c.N == doctest::Approx(std::sqrt(n_sq)).epsilon(1e-14));
  CHECK(c.n_sq_tail == 0.0);
  CHECK(c.terms == 3);
}

TEST_CASE("opoly_constants: agrees with best_approx on the induced lattice measure") {
  const auto fam = OrthogonalFamily::hermite();
  const double t = 0.4;
  const auto f = fam.eval_all(400, t);
  std::map<long, double> w;
  for (long n = 0; n <= 400; ++n) w[n] = f[static_cast<std::size_t>(n)] * f[static_cast<std::size_t>(n)];
  const Problem p(SpectralMeasure::lattice_finite(numerics::IndexSet::nonnegative, w), Symbol::power(1),
                  Symbol::power(3));
  const auto a = opoly_constants(fam, Symbol::power(1), Symbol::power(3), 2.0, t);
  const auto b = best_approx(p, 2.0);
  CHECK(a.N == doctest::Approx(b.N).epsilon(1e-10));
  CHECK(a.E == doctest::Approx(b.E).epsilon(1e-10));
}

TEST_CASE("opoly_constants: non-summable and undecidable pairs are rejected") {
  const auto h = OrthogonalFamily::hermite();
  CHECK_THROWS_AS(opoly_constants(h, Symbol::power(2), Symbol::power(1), 1.0, 0.0), AdmissibilityError);
  CHECK_THROWS_AS(
      opoly_constants(h, Symbol::custom([](double t) { return t; }, 1.0), Symbol::power(2), 1.0, 0.0),
      AdmissibilityError);
  CHECK_THROWS_AS(opoly_constants(OrthogonalFamily::laguerre(0.0), Symbol::power(1), Symbol::power(2), 1.0, -1.0),
                  std::domain_error);
  CHECK_THROWS_AS(opoly_constants(h, Symbol::power(1), Symbol::power(2), 1.0, 0.0, -1), ConfigError);
}

TEST_CASE("opoly_extremal_functional: matches a 500-term direct sum") {
  const auto fam = OrthogonalFamily::jacobi(0.0, 0.0);
  const auto x = [](long n) { return 1.0 / ((1.0 + n) * (1.0 + n)); };
  const auto r = opoly_extremal_functional(fam, Symbol::power(1), Symbol::power(1), 0.5, 0.2, x, 500);
  const auto f = fam.eval_all(500, 0.2);
  long double s = 0.0L;
  for (long n = 500; n >= 0; --n) s += n * x(n) * f[static_cast<std::size_t>(n)] / (1.0L + 0.5L * n * n);
  CHECK(r.value.real() == doctest::Approx(static_cast<double>(s)).epsilon(1e-13));
  CHECK(r.terms == 501);
  CHECK(std::isfinite(r.error));

  const auto few = opoly_extremal_functional(fam, Symbol::power(1), Symbol::power(1), 0.5, 0.2, x, 4);
  CHECK(std::isinf(few.error));
  const auto none = opoly_extremal_functional(fam, Symbol::zero(), Symbol::power(1), 0.5, 0.2, x, 4);
  CHECK(none.error == 0.0);
}
