#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

namespace stechkin::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kDefaultSeriesTol = 1e-10;
inline constexpr double kDefaultRootTol = 1e-12;

enum class Status {
  converged,
  budget_exhausted,  // panel / term budget hit before the tolerance was met
  non_finite,        // integrand or term returned inf / nan
  diverged,          // no decay detected (series) or value provably infinite
};

std::string_view to_string(Status s);

template <std::size_t K>
using Vec = std::array<double, K>;

/// Closed interval with possibly infinite ends.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  [[nodiscard]] bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  [[nodiscard]] bool contains(double t) const { return t >= lo && t <= hi; }
};

inline const Interval kRealLine{-kInf, kInf};

struct QuadOptions {
  double rel_tol = kDefaultQuadTol;
  double abs_floor = 0.0;
  int max_panels = 20000;
};

template <std::size_t K>
struct QuadResultN {
  Vec<K> value{};
  Vec<K> abs_error{};
  int panels = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels_used = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

struct ComplexQuadResult {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  int panels_used = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
  double a, b;
  Vec<K> value, error, abs_value;
  double priority;
  bool operator<(const Panel& o) const { return priority < o.priority; }
};

// Maps the working variable u onto the user's variable t; infinite ends use
// t = c + u / (1 - u^2).
struct Mapping {
  enum class Kind { finite, both_infinite, upper_infinite, lower_infinite } kind;
  double anchor = 0.0;
  double u_lo = 0.0, u_hi = 0.0;

  static Mapping make(const Interval& d) {
    if (d.bounded()) return {Kind::finite, 0.0, d.lo, d.hi};
    if (!std::isfinite(d.lo) && !std::isfinite(d.hi)) return {Kind::both_infinite, 0.0, -1.0, 1.0};
    if (std::isfinite(d.lo)) return {Kind::upper_infinite, d.lo, 0.0, 1.0};
    return {Kind::lower_infinite, d.hi, -1.0, 0.0};
  }

  // Returns (t, dt/du).
  [[nodiscard]] std::pair<double, double> operator()(double u) const {
    if (kind == Kind::finite) return {u, 1.0};
    const double s = 1.0 - u * u;
    return {anchor + u / s, (1.0 + u * u) / (s * s)};
  }
};

template <std::size_t K, class F>
bool gk15(const F& f, const Mapping& map, double a, double b, Panel<K>& out) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Vec<K> kron{}, gauss{}, absk{};
  auto eval = [&](double u, Vec<K>& y) -> bool {
    const auto [t, jac] = map(u);
    y = f(t);
    for (std::size_t k = 0; k < K; ++k) {
      y[k] *= jac;
      if (!std::isfinite(y[k])) return false;
    }
    return true;
  };
  Vec<K> yc;
  if (!eval(c, yc)) return false;
  for (std::size_t k = 0; k < K; ++k) {
    kron[k] = kWgk[7] * yc[k];
    gauss[k] = kWg[3] * yc[k];
    absk[k] = kWgk[7] * std::abs(yc[k]);
  }
  for (int j = 0; j < 7; ++j) {
    Vec<K> y1, y2;
    if (!eval(c - h * kXgk[j], y1) || !eval(c + h * kXgk[j], y2)) return false;
    for (std::size_t k = 0; k < K; ++k) {
      kron[k] += kWgk[j] * (y1[k] + y2[k]);
      absk[k] += kWgk[j] * (std::abs(y1[k]) + std::abs(y2[k]));
      if (j % 2 == 1) gauss[k] += kWg[j / 2] * (y1[k] + y2[k]);
    }
  }
  out.a = a;
  out.b = b;
  for (std::size_t k = 0; k < K; ++k) {
    out.value[k] = kron[k] * h;
    out.error[k] = std::abs((kron[k] - gauss[k]) * h);
    out.abs_value[k] = absk[k] * std::abs(h);
  }
  return true;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of a vector-valued integrand. All K
/// components share one panel schedule; each must meet its own tolerance
/// max(abs_floor, rel_tol * max(|I_k|, 1e-2 * int |f_k|)).
template <std::size_t K, class F>
QuadResultN<K> integrate_vec(const F& f, const Interval& domain, const QuadOptions& opt = {}) {
  QuadResultN<K> res;
  if (domain.lo == domain.hi) return res;
  const auto map = detail::Mapping::make(domain);

  using Panel = detail::Panel<K>;
  std::priority_queue<Panel> heap;
  Vec<K> total{}, total_err{}, total_abs{};
  std::vector<Panel> frozen;  // panels too narrow to split further

  auto tolerance = [&](std::size_t k) {
    const double scale = std::max(std::abs(total[k]), 1e-2 * total_abs[k]);
    return std::max(opt.abs_floor, opt.rel_tol * scale);
  };
  auto push = [&](Panel p) {
    double pr = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double scale = std::max({std::abs(total[k]), 1e-2 * total_abs[k], 1e-300});
      pr = std::max(pr, p.error[k] / scale);
    }
    p.priority = pr;
    if (std::abs(p.b - p.a) <= 1e-14 * std::max({std::abs(p.a), std::abs(p.b), 1e-300}))
      frozen.push_back(p);
    else
      heap.push(p);
  };

  Panel first{};
  if (!detail::gk15<K>(f, map, map.u_lo, map.u_hi, first)) {
    res.status = Status::non_finite;
    return res;
  }
  total = first.value;
  total_err = first.error;
  total_abs = first.abs_value;
  push(first);
  int panels = 1;

  auto done = [&] {
    for (std::size_t k = 0; k < K; ++k)
      if (total_err[k] > tolerance(k)) return false;
    return true;
  };

  while (!done()) {
    if (panels >= opt.max_panels || heap.empty()) {
      res.status = Status::budget_exhausted;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{}, right{};
    if (!detail::gk15<K>(f, map, worst.a, mid, left) ||
        !detail::gk15<K>(f, map, mid, worst.b, right)) {
      res.status = Status::non_finite;
      break;
    }
    ++panels;
    for (std::size_t k = 0; k < K; ++k) {
      total[k] += left.value[k] + right.value[k] - worst.value[k];
      total_err[k] += left.error[k] + right.error[k] - worst.error[k];
      total_abs[k] += left.abs_value[k] + right.abs_value[k] - worst.abs_value[k];
      total_err[k] = std::max(total_err[k], 0.0);
    }
    push(left);
    push(right);
  }

  // Re-sum from the panel list so the reported value does not carry the
  // running-update rounding.
  Vec<K> sum{}, err{};
  auto accumulate = [&](const Panel& p) {
    for (std::size_t k = 0; k < K; ++k) {
      sum[k] += p.value[k];
      err[k] += p.error[k];
    }
  };
  std::vector<Panel> all(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : all) accumulate(p);
  res.value = sum;
  res.abs_error = err;
  res.panels = panels;
  return res;
}

QuadResult integrate(const std::function<double(double)>& f, const Interval& domain,
                     double rel_tol = kDefaultQuadTol, double abs_floor = 0.0);

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    const Interval& domain, double rel_tol = kDefaultQuadTol,
                                    double abs_floor = 0.0);

// ---------------------------------------------------------------------------
// Lattice series

enum class IndexSet { integers, nonnegative };

std::string_view to_string(IndexSet s);

struct SeriesOptions {
  double rel_tol = kDefaultSeriesTol;
  double abs_floor = 0.0;
  long max_terms = 1L << 22;
  long min_terms = 16;
};

template <std::size_t K>
struct SeriesResultN {
  Vec<K> value{};
  Vec<K> tail_bound{};
  long terms_used = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  long terms_used = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

struct ComplexSeriesResult {
  std::complex<double> value;
  double tail_bound = 0.0;
  long terms_used = 0;
  Status status = Status::converged;
  [[nodiscard]] bool ok() const { return status == Status::converged; }
};

namespace detail {

struct TailEstimate {
  bool usable = false;
  double correction = 0.0;
  double bound = 0.0;
};

// Integral test on the power envelope a(x) = a_m (m / x)^p fitted through
// the absolute terms at m/2 and m; a second fit through m/4 and m/2 bounds
// the envelope's model error.
inline TailEstimate envelope_tail(double a_quarter, double a_half, double a_m, long m,
                                  bool nonnegative) {
  TailEstimate out;
  if (a_m == 0.0 && a_half == 0.0) {
    out.usable = true;
    return out;
  }
  if (!(a_half > a_m) || a_m <= 0.0) return out;
  const double p = std::log(a_half / a_m) / std::log(2.0);
  if (p <= 1.0 + 1e-3) return out;
  const double md = static_cast<double>(m);
  auto upper_tail = [&](double q) { return a_m * md / (q - 1.0); };
  const double upper = upper_tail(p);
  const double lower = a_m * std::pow(md / (md + 1.0), p) * (md + 1.0) / (p - 1.0);
  double model = 0.0;
  if (a_quarter > a_half && a_half > 0.0) {
    const double p2 = std::log(a_quarter / a_half) / std::log(2.0);
    model = p2 > 1.0 + 1e-3 ? std::abs(upper - upper_tail(p2)) : upper;
  } else {
    model = upper;
  }
  out.usable = true;
  if (nonnegative) {
    out.correction = 0.5 * (upper + lower);
    out.bound = 0.5 * (upper - lower) + model;
  } else {
    out.bound = upper + model;
  }
  return out;
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

}  // namespace detail

/// Sums term(n) over the lattice. For the integers the pair term(n)+term(-n)
/// is treated as one term. The monotone tail is bounded by the integral test
/// once three consecutive non-increases of the absolute terms are seen.
template <std::size_t K, class F>
SeriesResultN<K> sum_lattice_vec(const F& term, IndexSet set, const SeriesOptions& opt = {}) {
  SeriesResultN<K> res;
  std::array<detail::CompensatedSum, K> acc{};
  Vec<K> abs_total{};
  std::array<bool, K> nonneg;
  nonneg.fill(true);
  std::array<int, K> non_increases{};
  std::vector<Vec<K>> history;  // absolute combined terms a_0..a_m
  history.reserve(1024);

  auto combined = [&](long n, Vec<K>& signed_part, Vec<K>& abs_part) -> bool {
    const Vec<K> y = term(n);
    for (std::size_t k = 0; k < K; ++k) {
      if (!std::isfinite(y[k])) return false;
      signed_part[k] = y[k];
      abs_part[k] = std::abs(y[k]);
    }
    if (set == IndexSet::integers && n > 0) {
      const Vec<K> z = term(-n);
      for (std::size_t k = 0; k < K; ++k) {
        if (!std::isfinite(z[k])) return false;
        signed_part[k] += z[k];
        abs_part[k] += std::abs(z[k]);
        if (z[k] < 0.0) nonneg[k] = false;
      }
    }
    for (std::size_t k = 0; k < K; ++k)
      if (y[k] < 0.0) nonneg[k] = false;
    return true;
  };

  long next_check = std::max<long>(opt.min_terms, 4);
  for (long n = 0;; ++n) {
    if (n >= opt.max_terms) {
      // decaying: recent non-increases and a smaller peak over the last half
      bool decaying = true;
      const std::size_t m = history.size();
      for (std::size_t k = 0; k < K && decaying; ++k) {
        double early = 0.0, late = 0.0;
        for (std::size_t i = m / 4; i < m / 2; ++i) early = std::max(early, history[i][k]);
        for (std::size_t i = m / 2; i < m; ++i) late = std::max(late, history[i][k]);
        if (non_increases[k] < 3 || (late >= early && late > 0.0)) decaying = false;
      }
      res.status = decaying ? Status::budget_exhausted : Status::diverged;
      break;
    }
    Vec<K> s{}, a{};
    if (!combined(n, s, a)) {
      res.status = Status::non_finite;
      res.terms_used = n;
      return res;
    }
    for (std::size_t k = 0; k < K; ++k) {
      acc[k].add(s[k]);
      abs_total[k] += a[k];
      if (!history.empty()) {
        if (a[k] <= history.back()[k])
          ++non_increases[k];
        else
          non_increases[k] = 0;
      }
    }
    history.push_back(a);
    res.terms_used = n + 1;

    if (n + 1 < next_check) continue;
    next_check *= 2;

    const long m = n;
    bool all_ok = true;
    Vec<K> corr{}, bound{};
    for (std::size_t k = 0; k < K; ++k) {
      if (non_increases[k] < 3) {
        all_ok = false;
        break;
      }
      const auto tail = detail::envelope_tail(history[m / 4][k], history[m / 2][k], history[m][k],
                                              m, nonneg[k]);
      if (!tail.usable) {
        all_ok = false;
        break;
      }
      corr[k] = tail.correction;
      bound[k] = tail.bound;
      const double v = acc[k].value() + corr[k];
      const double tol = std::max(
          opt.abs_floor, opt.rel_tol * std::max(std::abs(v), 1e-2 * (abs_total[k] + corr[k])));
      if (bound[k] > tol) all_ok = false;
    }
    if (all_ok) {
      for (std::size_t k = 0; k < K; ++k) {
        res.value[k] = acc[k].value() + corr[k];
        res.tail_bound[k] = bound[k];
      }
      res.status = Status::converged;
      return res;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    res.value[k] = acc[k].value();
    res.tail_bound[k] = kInf;
  }
  return res;
}

SeriesResult sum_lattice(const std::function<double(long)>& term, IndexSet set,
                         double rel_tol = kDefaultSeriesTol);

ComplexSeriesResult sum_lattice_complex(const std::function<std::complex<double>(long)>& term,
                                        IndexSet set, double rel_tol = kDefaultSeriesTol);

// ---------------------------------------------------------------------------
// Monotone root finding

struct MonotoneSolution {
  double tau = 0.0;
  double value = 0.0;  // fn(tau)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double value_lo = 0.0;  // fn(bracket_lo)
  double value_hi = 0.0;  // fn(bracket_hi)
  int iterations = 0;
  /// fn(bracket_lo) >= fn(bracket_hi), i.e. non-increasing on the final bracket.
  [[nodiscard]] bool monotone_on_bracket() const { return value_lo >= value_hi; }
};

inline constexpr double kBracketLo = 1e-8;
inline constexpr double kBracketHiStart = 1.0;
inline constexpr double kBracketHiMax = 1e12;

/// Solves fn(tau) = target for a continuous non-increasing fn on (0, inf).
/// Throws OutOfRangeError naming the violated limit.
MonotoneSolution solve_monotone(const std::function<double(double)>& fn, double target,
                                double rel_tol = kDefaultRootTol);

// ---------------------------------------------------------------------------
// Supremum search

struct SupResult {
  double value = 0.0;
  std::optional<double> argmax;  // empty when the sup is approached at infinity
  bool at_infinity = false;
  bool infinite = false;
};

struct SupOptions {
  int grid_points = 4001;
  /// Growth exponent of fn at infinity (fn ~ |t|^g). Positive means the
  /// supremum is infinite on unbounded domains; empty means unknown.
  std::optional<double> growth_hint;
};

SupResult sup_search(const std::function<double(double)>& fn, const Interval& domain,
                     const SupOptions& opt = {});

}  // namespace stechkin::numerics
