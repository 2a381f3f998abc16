#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "stechkin/errors.hpp"
#include "stechkin/numerics.hpp"

using namespace stechkin;
using namespace stechkin::numerics;

namespace {

// Composite Simpson on [lo, hi]; independent of the adaptive code.
double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("integrate: gaussian over the real line") {
  const auto r = integrate([](double t) { return std::exp(-t * t); }, kRealLine);
  REQUIRE(r.ok());
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(r.abs_error_estimate >= 0.0);
  CHECK(r.panels_used >= 1);
}

TEST_CASE("integrate: exponential on the half line") {
  const auto r = integrate([](double t) { return std::exp(-t); }, {0.0, kInf});
  REQUIRE(r.ok());
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate: rational integrand matches the Beta closed form") {
  const auto f = [](double t) { return t * t / std::pow(1.0 + t * t * t * t, 2); };
  const auto r = integrate(f, kRealLine);
  REQUIRE(r.ok());
  CHECK(r.value == doctest::Approx(0.5553603672697958).epsilon(1e-10));
  // Simpson on [-200, 200] plus the analytic tail 2∫_200^inf t^-6 dt
  const double oracle = simpson(f, -200.0, 200.0, 2'000'000) + 2.0 / (5.0 * std::pow(200.0, 5));
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("integrate: finite interval with endpoint singularity") {
  const auto r = integrate([](double t) { return 1.0 / std::sqrt(t); }, {0.0, 1.0});
  REQUIRE(r.ok());
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("integrate: non-finite integrand reports failure") {
  const auto r = integrate([](double) { return std::nan(""); }, {0.0, 1.0});
  CHECK_FALSE(r.ok());
  CHECK(r.status == Status::non_finite);
}

TEST_CASE("integrate: budget exhaustion is explicit") {
  QuadOptions opt;
  opt.max_panels = 4;
  const auto r = integrate_vec<1>(
      [](double t) { return Vec<1>{std::sin(1.0 / (t + 1e-3))}; }, {0.0, 1.0}, opt);
  CHECK_FALSE(r.ok());
  CHECK(r.status == Status::budget_exhausted);
}

TEST_CASE("integrate: linear in the integrand (property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 25; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const auto f = [&](double t) { return a / (1.0 + b * t * t); };
    const auto g = [&](double t) { return std::exp(-c * t * t); };
    const auto rf = integrate(f, kRealLine);
    const auto rg = integrate(g, kRealLine);
    const auto rs = integrate([&](double t) { return f(t) + g(t); }, kRealLine);
    REQUIRE(rf.ok());
    REQUIRE(rg.ok());
    REQUIRE(rs.ok());
    CHECK(std::abs(rs.value - rf.value - rg.value) <= 10 * kDefaultQuadTol * std::abs(rs.value));
    CHECK(rf.value == doctest::Approx(a * std::numbers::pi / std::sqrt(b)).epsilon(1e-9));
  }
}

TEST_CASE("integrate_complex: real and imaginary parts") {
  const auto r = integrate_complex(
      [](double t) { return std::complex<double>(std::exp(-t * t), t * std::exp(-t * t)); },
      kRealLine);
  REQUIRE(r.ok());
  CHECK(r.value.real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(std::abs(r.value.imag()) < 1e-12);
}

TEST_CASE("sum_lattice: zero and geometric series") {
  const auto z = sum_lattice([](long) { return 0.0; }, IndexSet::integers);
  REQUIRE(z.ok());
  CHECK(z.value == 0.0);
  CHECK(z.terms_used >= 1);

  const auto g = sum_lattice([](long n) { return std::pow(2.0, -static_cast<double>(n)); },
                             IndexSet::nonnegative);
  REQUIRE(g.ok());
  CHECK(g.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(g.tail_bound >= 0.0);
}

TEST_CASE("sum_lattice: algebraic decay over Z against a long-double oracle") {
  const auto term = [](long n) {
    const double x = static_cast<double>(n);
    return x * x / std::pow(1.0 + x * x * x * x, 2);
  };
  const auto r = sum_lattice(term, IndexSet::integers);
  REQUIRE(r.ok());
  CHECK(r.value == doctest::Approx(0.531046991776717).epsilon(1e-10));

  long double s = 0.0L;
  for (long n = 200000; n >= 1; --n) {
    const long double x = n;
    s += 2.0L * x * x / ((1.0L + x * x * x * x) * (1.0L + x * x * x * x));
  }
  CHECK(std::abs(r.value - static_cast<double>(s)) <= r.tail_bound + 1e-12);
  CHECK(r.tail_bound <= 1e-10 * r.value);
}

TEST_CASE("sum_lattice: Z equals twice Z+ minus the centre term (property)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(2.2, 6.0);
  for (int i = 0; i < 20; ++i) {
    const double p = u(rng);
    const auto term = [p](long n) { return 1.0 / std::pow(1.0 + std::abs(static_cast<double>(n)), p); };
    const auto whole = sum_lattice(term, IndexSet::integers);
    const auto half = sum_lattice(term, IndexSet::nonnegative);
    REQUIRE(whole.ok());
    REQUIRE(half.ok());
    CHECK(std::abs(whole.value - (2.0 * half.value - 1.0)) <= 2.0 * kDefaultSeriesTol * whole.value + 1e-12);
  }
}

TEST_CASE("sum_lattice: divergent harmonic series is reported") {
  SeriesOptions opt;
  opt.max_terms = 1 << 14;
  const auto r = sum_lattice_vec<1>([](long n) { return Vec<1>{1.0 / (1.0 + n)}; },
                                    IndexSet::nonnegative, opt);
  CHECK_FALSE(r.ok());
}

TEST_CASE("sum_lattice: non-decaying terms are reported as divergent") {
  SeriesOptions opt;
  opt.max_terms = 1 << 12;
  const auto r = sum_lattice_vec<1>([](long n) { return Vec<1>{1.0 + 0.5 * std::sin(n)}; },
                                    IndexSet::nonnegative, opt);
  CHECK(r.status == Status::diverged);
}

TEST_CASE("solve_monotone: algebraic inverses") {
  const auto a = solve_monotone([](double t) { return 1.0 / (1.0 + t); }, 0.5);
  CHECK(a.tau == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(a.value - 0.5) <= 1e-12 * 0.5);
  CHECK(a.monotone_on_bracket());

  const auto b = solve_monotone([](double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); }, 0.25);
  CHECK(b.tau == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(b.monotone_on_bracket());
}

TEST_CASE("solve_monotone: two-atom N(tau) target") {
  const auto n = [](double t) {
    return std::sqrt(1.0 / ((1 + t) * (1 + t)) + 4.0 / ((1 + 16 * t) * (1 + 16 * t)));
  };
  const auto r = solve_monotone(n, 0.5136543881344994);
  CHECK(r.tau == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solve_monotone: out of range names the violated limit") {
  const auto f = [](double t) { return 1.0 / (1.0 + t); };
  try {
    (void)solve_monotone(f, 2.0);
    FAIL("expected OutOfRangeError");
  } catch (const OutOfRangeError& e) {
    CHECK(e.violated() == OutOfRangeError::Limit::at_zero);
  }
  try {
    (void)solve_monotone([](double t) { return 0.5 + 1.0 / (1.0 + t); }, 0.4);
    FAIL("expected OutOfRangeError");
  } catch (const OutOfRangeError& e) {
    CHECK(e.violated() == OutOfRangeError::Limit::at_infinity);
  }
}

TEST_CASE("solve_monotone: random rational targets (property)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 9.0);
  for (int i = 0; i < 50; ++i) {
    const double tau = std::pow(10.0, u(rng));
    const double target = 1.0 / (1.0 + tau);
    const auto r = solve_monotone([](double t) { return 1.0 / (1.0 + t); }, target);
    CHECK(std::abs(r.value - target) <= 1e-12 * target);
    CHECK(r.bracket_lo <= r.tau);
    CHECK(r.tau <= r.bracket_hi);
    CHECK(r.monotone_on_bracket());
  }
}

TEST_CASE("sup_search: stationary point of t^2/(1+t^4)") {
  const auto f = [](double t) { return t * t / (1.0 + t * t * t * t); };
  SupOptions opt;
  opt.growth_hint = -2.0;
  const auto r = sup_search(f, kRealLine, opt);
  REQUIRE_FALSE(r.infinite);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(r.argmax);
  CHECK(std::abs(std::abs(*r.argmax) - 1.0) < 1e-5);
}

TEST_CASE("sup_search: constant zero and centred decay") {
  const auto z = sup_search([](double) { return 0.0; }, kRealLine);
  CHECK(z.value == 0.0);
  const auto c = sup_search([](double t) { return 1.0 / (1.0 + t * t); }, kRealLine);
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(c.argmax);
  CHECK(std::abs(*c.argmax) < 1e-5);
}

TEST_CASE("sup_search: growth hint yields an infinite supremum") {
  SupOptions opt;
  opt.growth_hint = 1.0;
  const auto r = sup_search([](double t) { return t * t / std::sqrt(1.0 + t * t); }, kRealLine, opt);
  CHECK(r.infinite);
}

TEST_CASE("sup_search: supremum approached at infinity") {
  const auto r = sup_search([](double t) { return t * t / (1.0 + t * t); }, kRealLine);
  CHECK_FALSE(r.infinite);
  CHECK(r.at_infinity);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sup_search: never below a 10x denser verification grid (property)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double a = u(rng), b = u(rng) + 0.5, c = u(rng);
    const auto f = [&](double t) { return std::exp(-b * (t - c) * (t - c)) * (1.0 + a * std::sin(3.0 * t)); };
    const auto r = sup_search(f, {-4.0, 6.0});
    double dense = 0.0;
    for (int k = 0; k <= 40010; ++k) dense = std::max(dense, f(-4.0 + 10.0 * k / 40010.0));
    CHECK(r.value >= dense - 1e-12);
  }
}
