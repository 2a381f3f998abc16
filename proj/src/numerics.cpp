#include "stechkin/numerics.hpp"

#include <sstream>

#include "stechkin/errors.hpp"

namespace stechkin::numerics {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::budget_exhausted: return "budget_exhausted";
    case Status::non_finite: return "non_finite";
    case Status::diverged: return "diverged";
  }
  return "unknown";
}

std::string_view to_string(IndexSet s) { return s == IndexSet::integers ? "Z" : "Z+"; }

QuadResult integrate(const std::function<double(double)>& f, const Interval& domain,
                     double rel_tol, double abs_floor) {
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_floor = abs_floor;
  const auto r = integrate_vec<1>([&](double t) { return Vec<1>{f(t)}; }, domain, opt);
  return {r.value[0], r.abs_error[0], r.panels, r.status};
}

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    const Interval& domain, double rel_tol, double abs_floor) {
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_floor = abs_floor;
  const auto r = integrate_vec<2>(
      [&](double t) {
        const auto z = f(t);
        return Vec<2>{z.real(), z.imag()};
      },
      domain, opt);
  return {{r.value[0], r.value[1]}, std::hypot(r.abs_error[0], r.abs_error[1]), r.panels,
          r.status};
}

SeriesResult sum_lattice(const std::function<double(long)>& term, IndexSet set, double rel_tol) {
  SeriesOptions opt;
  opt.rel_tol = rel_tol;
  const auto r = sum_lattice_vec<1>([&](long n) { return Vec<1>{term(n)}; }, set, opt);
  return {r.value[0], r.tail_bound[0], r.terms_used, r.status};
}

ComplexSeriesResult sum_lattice_complex(const std::function<std::complex<double>(long)>& term,
                                        IndexSet set, double rel_tol) {
  SeriesOptions opt;
  opt.rel_tol = rel_tol;
  const auto r = sum_lattice_vec<2>(
      [&](long n) {
        const auto z = term(n);
        return Vec<2>{z.real(), z.imag()};
      },
      set, opt);
  return {{r.value[0], r.value[1]}, std::hypot(r.tail_bound[0], r.tail_bound[1]), r.terms_used,
          r.status};
}

MonotoneSolution solve_monotone(const std::function<double(double)>& fn, double target,
                                double rel_tol) {
  const double tol = rel_tol * std::abs(target);
  MonotoneSolution sol;

  double lo = kBracketLo;
  double f_lo = fn(lo);
  if (std::abs(f_lo - target) <= tol) {
    sol.tau = sol.bracket_lo = sol.bracket_hi = lo;
    sol.value = sol.value_lo = sol.value_hi = f_lo;
    return sol;
  }
  if (f_lo < target) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target " << target << " is not below fn(" << kBracketLo << ") = " << f_lo
        << "; it exceeds the limit as tau -> 0";
    throw OutOfRangeError(OutOfRangeError::Limit::at_zero, msg.str());
  }

  double hi = kBracketHiStart;
  double f_hi = fn(hi);
  while (f_hi > target + tol && hi < kBracketHiMax) {
    lo = hi;
    f_lo = f_hi;
    hi = std::min(2.0 * hi, kBracketHiMax);
    f_hi = fn(hi);
  }
  if (f_hi > target + tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target " << target << " is not above fn(" << kBracketHiMax << ") = " << f_hi
        << "; it is below the limit as tau -> infinity";
    throw OutOfRangeError(OutOfRangeError::Limit::at_infinity, msg.str());
  }

  double mid = hi, f_mid = f_hi;
  int it = 0;
  while (std::abs(f_mid - target) > tol && it < 500) {
    mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    f_mid = fn(mid);
    ++it;
    if (f_mid > target) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  sol.tau = mid;
  sol.value = f_mid;
  sol.bracket_lo = lo;
  sol.bracket_hi = hi;
  sol.value_lo = f_lo;
  sol.value_hi = f_hi;
  sol.iterations = it;
  return sol;
}

namespace {

double golden_max(const std::function<double(double)>& g, double a, double b, double& best_x) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 200 && std::abs(b - a) > 1e-15 * (std::abs(a) + std::abs(b) + 1e-300);
       ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  if (gc > gd) {
    best_x = c;
    return gc;
  }
  best_x = d;
  return gd;
}

}  // namespace

SupResult sup_search(const std::function<double(double)>& fn, const Interval& domain,
                     const SupOptions& opt) {
  SupResult res;
  if (!domain.bounded() && opt.growth_hint && *opt.growth_hint > 0.0) {
    res.value = kInf;
    res.infinite = true;
    res.at_infinity = true;
    return res;
  }
  const auto map = detail::Mapping::make(domain);
  auto in_t = [&](double u) { return map(u).first; };
  auto g = [&](double u) {
    const double v = fn(in_t(u));
    return std::isfinite(v) ? v : -kInf;
  };

  const int n = std::max(opt.grid_points, 3);
  const double du = (map.u_hi - map.u_lo) / (n - 1);
  double best = -kInf;
  int best_i = 0;
  double best_u = map.u_lo;
  for (int i = 0; i < n; ++i) {
    double u = map.u_lo + i * du;
    if (!domain.bounded()) {
      // keep clear of the mapped singular ends
      if (i == 0 && !std::isfinite(domain.lo)) u = map.u_lo + 0.5 * du;
      if (i == n - 1 && !std::isfinite(domain.hi)) u = map.u_hi - 0.5 * du;
    }
    const double v = g(u);
    if (v > best) {
      best = v;
      best_i = i;
      best_u = u;
    }
  }

  double far_best = -kInf;
  if (!domain.bounded()) {
    // probe decades beyond the grid toward each infinite end
    std::vector<double> tail_hi, tail_lo;
    for (double r = 1e3; r <= 1e12; r *= 10.0) {
      if (!std::isfinite(domain.hi)) tail_hi.push_back(fn(std::isfinite(domain.lo) ? domain.lo + r : r));
      if (!std::isfinite(domain.lo)) tail_lo.push_back(fn(std::isfinite(domain.hi) ? domain.hi - r : -r));
    }
    auto growing = [](const std::vector<double>& v) {
      if (v.size() < 3) return false;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > 2.0 * v[i - 1])) return false;
      return true;
    };
    if (!opt.growth_hint && (growing(tail_hi) || growing(tail_lo))) {
      res.value = kInf;
      res.infinite = true;
      res.at_infinity = true;
      return res;
    }
    for (const auto* tail : {&tail_hi, &tail_lo})
      for (double v : *tail)
        if (std::isfinite(v)) far_best = std::max(far_best, v);
  }

  const double ua = map.u_lo + std::max(best_i - 1, 0) * du;
  const double ub = map.u_lo + std::min(best_i + 1, n - 1) * du;
  double u_star = best_u;
  const double refined = golden_max(g, ua + (ua == map.u_lo && !std::isfinite(domain.lo) ? 1e-3 * du : 0.0),
                                    ub - (ub == map.u_hi && !std::isfinite(domain.hi) ? 1e-3 * du : 0.0),
                                    u_star);
  if (refined > best) {
    best = refined;
  } else {
    u_star = best_u;
  }

  if (far_best > best) {
    res.value = far_best;
    res.at_infinity = true;
    return res;
  }
  res.value = best;
  res.argmax = in_t(u_star);
  return res;
}

}  // namespace stechkin::numerics
