#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "stechkin/errors.hpp"
#include "stechkin/measure.hpp"
#include "stechkin/spectral.hpp"
#include "stechkin/symbol.hpp"

using namespace stechkin;
using numerics::IndexSet;
using numerics::kInf;

TEST_CASE("Symbol: power keeps the sign for integer exponents") {
  const auto s = Symbol::power(3);
  CHECK(s(-2.0).real() == doctest::Approx(-8.0));
  CHECK(s.modulus(-2.0) == doctest::Approx(8.0));
  const auto h = Symbol::power(1.5);
  CHECK(h(-4.0).real() == doctest::Approx(8.0));
  CHECK(Symbol::power(0)(0.0).real() == 1.0);
  CHECK(s.exact_order() == 3.0);
  CHECK(s.growth_order() == 3.0);
}

TEST_CASE("Symbol: invalid constructions") {
  CHECK_THROWS_AS(Symbol::power(-1.0), ConfigError);
  CHECK_THROWS_AS(Symbol::power(std::nan("")), ConfigError);
  CHECK_THROWS_AS(Symbol::table({{1, {kInf, 0.0}}}), ConfigError);
  CHECK_THROWS_AS(Symbol::custom(nullptr, 1.0), ConfigError);
}

TEST_CASE("Symbol: table values live on lattice points only") {
  const auto s = Symbol::table({{-2, {1.0, 2.0}}, {3, 4.0}, {5, 0.0}});
  CHECK(s(-2.0) == std::complex<double>(1.0, 2.0));
  CHECK(s(3.0).real() == 4.0);
  CHECK(s(3.5) == std::complex<double>{});
  CHECK(s(7.0) == std::complex<double>{});
  CHECK(s.support_radius() == 3);
  CHECK_FALSE(s.identically_zero());
  CHECK(Symbol::table({{1, 0.0}}).identically_zero());
  CHECK(std::isinf(*s.exact_order()));
}

TEST_CASE("Symbol: zero and custom") {
  const auto z = Symbol::zero();
  CHECK(z.identically_zero());
  CHECK(z(12.0) == std::complex<double>{});
  const auto c = Symbol::custom([](double t) { return std::complex<double>(0.0, t); }, 1.0, "it");
  CHECK(c(2.0) == std::complex<double>(0.0, 2.0));
  CHECK_FALSE(c.exact_order());
  CHECK(c.growth_order() == 1.0);
  CHECK(c.descriptor() == "it");
}

TEST_CASE("SpectralMeasure: validation") {
  CHECK_THROWS_AS(SpectralMeasure::discrete({{1.0, -1.0}}), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure::discrete({{1.0, 1.0}, {1.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure::discrete({{kInf, 1.0}}), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure::lattice_finite(IndexSet::nonnegative, {{-1, 1.0}}), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure::lattice_uniform(IndexSet::integers, -1.0), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure::density({{1.0, 0.0}}, [](double) { return 1.0; }, 0.0, "x"),
                  ConfigError);
  CHECK_THROWS_AS(
      SpectralMeasure::density({{0.0, 2.0}, {1.0, 3.0}}, [](double) { return 1.0; }, 0.0, "x"),
      ConfigError);
  CHECK_THROWS_AS((void)SpectralMeasure::discrete({{1.0, 1.0}}).scaled(0.0), ConfigError);
}

TEST_CASE("SpectralMeasure: total mass") {
  CHECK(SpectralMeasure::discrete({{1.0, 1.0}, {2.0, 0.5}}).total_mass() == 1.5);
  CHECK(std::isinf(SpectralMeasure::lebesgue().total_mass()));
  CHECK(std::isinf(SpectralMeasure::lattice_uniform(IndexSet::integers, 1.0).total_mass()));
  const auto g = SpectralMeasure::density({numerics::kRealLine}, [](double t) { return std::exp(-t * t); },
                                          -kInf, "gaussian");
  CHECK(g.total_mass() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  const auto l = SpectralMeasure::lattice(IndexSet::nonnegative,
                                          [](long n) { return std::pow(0.5, static_cast<double>(n)); },
                                          -kInf, "geometric");
  CHECK(l.total_mass() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(SpectralMeasure::discrete({{1.0, 2.0}}).scaled(3.0).total_mass() == 6.0);
}

TEST_CASE("spectral_integral: discrete sums exactly") {
  const auto m = SpectralMeasure::discrete({{1.0, 1.0}, {2.0, 1.0}});
  const auto v = spectral_integral(m, [](double t) { return t * t; });
  CHECK(v.value == 5.0);
  CHECK_FALSE(v.infinite);
}

TEST_CASE("spectral_integral: Lebesgue with t^2/(1+t^4)^2") {
  const auto v = spectral_integral(
      SpectralMeasure::lebesgue(), [](double t) { return t * t / std::pow(1 + t * t * t * t, 2); }, -6.0);
  CHECK(v.value == doctest::Approx(0.5553603672697958).epsilon(1e-10));
  CHECK(v.error <= 1e-9 * v.value);
}

TEST_CASE("spectral_integral: provable divergence short-circuits") {
  const auto v = spectral_integral(SpectralMeasure::lattice_uniform(IndexSet::integers, 1.0),
                                   [](double t) { return t * t; }, 2.0);
  CHECK(v.infinite);
  CHECK(std::isinf(v.value));
}

TEST_CASE("spectral_integral: half-line lattice against a long-double oracle") {
  const auto w = [](double t) { return 1.0 / std::pow(1.0 + t, 3); };
  const auto v = spectral_integral(SpectralMeasure::lattice_uniform(IndexSet::nonnegative, 1.0), w, -3.0);
  long double s = 0.0L;
  for (long n = 3'000'000; n >= 0; --n) s += 1.0L / ((1.0L + n) * (1.0L + n) * (1.0L + n));
  // ζ(3) minus the truncation, tail ~ 1/(2 m^2) ≈ 5.6e-14
  CHECK(v.value == doctest::Approx(static_cast<double>(s)).epsilon(1e-10));
  CHECK(v.value == doctest::Approx(1.2020569031595942).epsilon(1e-10));
}

TEST_CASE("spectral_integrals: shared pass equals separate passes (property)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 10; ++i) {
    const double a = u(rng), b = u(rng);
    WeightSet<2> ws;
    ws.fn = [&](double t) {
      return numerics::Vec<2>{1.0 / (1.0 + a * t * t), 1.0 / std::pow(1.0 + b * t * t, 2)};
    };
    ws.exact_order = {-2.0, -4.0};
    const auto both = spectral_integrals<2>(SpectralMeasure::lebesgue(), ws);
    CHECK(both[0].value == doctest::Approx(std::numbers::pi / std::sqrt(a)).epsilon(1e-9));
    CHECK(both[1].value == doctest::Approx(std::numbers::pi / (2.0 * std::sqrt(b))).epsilon(1e-9));
  }
}

TEST_CASE("norm_phi_f: finite and infinite") {
  const auto lattice = SpectralMeasure::lattice_uniform(IndexSet::integers, 1.0);
  CHECK(norm_phi_f(lattice, Symbol::power(1)).infinite);
  const auto m = SpectralMeasure::discrete({{1.0, 1.0}, {2.0, 1.0}});
  CHECK(norm_phi_f(m, Symbol::power(1)).value == doctest::Approx(std::sqrt(5.0)));
  CHECK(norm_phi_f(lattice, Symbol::zero()).value == 0.0);
}

TEST_CASE("ratio_order and domination_exponent") {
  CHECK(*ratio_order(Symbol::power(1), Symbol::power(2), 2, 4) == -6.0);
  CHECK(*ratio_order(Symbol::power(1), Symbol::power(2), 0, 2) == -6.0);
  CHECK(std::isinf(*ratio_order(Symbol::zero(), Symbol::power(2), 0, 2)));
  CHECK(*ratio_order(Symbol::power(1), Symbol::zero(), 0, 2) == 2.0);
  CHECK_FALSE(ratio_order(Symbol::power(1), Symbol::custom([](double t) { return t; }, 1.0), 0, 1));
  CHECK(*domination_exponent(Symbol::power(1), Symbol::power(2)) == -1.0);
  CHECK(*domination_exponent(Symbol::power(2), Symbol::power(1)) == 1.0);
  CHECK_FALSE(domination_exponent(Symbol::custom([](double t) { return t; }, std::nullopt),
                                  Symbol::power(1)));
}

TEST_CASE("check_admissibility: power pairs on the line") {
  const auto ok = check_admissibility(Symbol::power(1), Symbol::power(2), SpectralMeasure::lebesgue());
  CHECK(ok.domination_holds());
  CHECK(ok.l2_condition == Verdict::holds);
  // sup |t|/(1+t^4)^{1/2} = 2^{-1/2} at |t| = 1
  CHECK(ok.ess_sup_estimate == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

  const auto bad = check_admissibility(Symbol::power(2), Symbol::power(1), SpectralMeasure::lebesgue());
  CHECK(bad.domination == Verdict::fails);
  CHECK(std::isinf(bad.ess_sup_estimate));

  const auto zero = check_admissibility(Symbol::zero(), Symbol::power(3), SpectralMeasure::lebesgue());
  CHECK(zero.domination_holds());
  CHECK(zero.ess_sup_estimate == 0.0);
}

TEST_CASE("check_admissibility: equal orders are bounded but not L2 on the line") {
  const auto r = check_admissibility(Symbol::power(1), Symbol::power(1), SpectralMeasure::lebesgue());
  CHECK(r.domination_holds());
  CHECK(r.l2_condition == Verdict::fails);
}

TEST_CASE("check_admissibility: finite support always dominated") {
  const auto r = check_admissibility(Symbol::power(5), Symbol::zero(),
                                     SpectralMeasure::discrete({{3.0, 1.0}, {-2.0, 0.5}}));
  CHECK(r.domination_holds());
  CHECK(r.l2_condition == Verdict::not_applicable);
  CHECK(r.ess_sup_estimate == doctest::Approx(243.0));
}

TEST_CASE("check_admissibility: custom symbols need growth metadata") {
  const auto c = Symbol::custom([](double t) { return std::sin(t); }, std::nullopt);
  const auto r = check_admissibility(c, Symbol::power(1), SpectralMeasure::lebesgue());
  CHECK(r.domination == Verdict::undecidable);
  CHECK_FALSE(r.domination_holds());
  const auto g = Symbol::custom([](double t) { return std::sin(t); }, 0.0);
  const auto r2 = check_admissibility(g, Symbol::power(1), SpectralMeasure::lebesgue());
  CHECK(r2.domination_holds());
  CHECK(r2.ess_sup_estimate <= 1.0 + 1e-12);
  CHECK_THROWS_AS(require_domination(c, Symbol::power(1), SpectralMeasure::lebesgue()),
                  AdmissibilityError);
}

TEST_CASE("check_admissibility: random power pairs decided by exponents (property)") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int i = 0; i < 40; ++i) {
    const double a = u(rng), b = u(rng);
    const auto r = check_admissibility(Symbol::power(a), Symbol::power(b), SpectralMeasure::lebesgue());
    CHECK(r.domination_holds() == (a <= b));
    if (r.domination_holds()) CHECK(std::isfinite(r.ess_sup_estimate));
  }
}
