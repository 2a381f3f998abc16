#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stechkin/numerics.hpp"

namespace stechkin {

struct Atom {
  double t = 0.0;
  double w = 0.0;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
};

/// Weights on Z or Z+. Either finitely many explicit weights, or a weight
/// function on the whole index set with a known asymptotic exponent.
struct LatticeMeasure {
  numerics::IndexSet set = numerics::IndexSet::integers;
  bool finite_support = true;
  std::map<long, double> weights;
  std::function<double(long)> weight_fn;
  std::optional<double> weight_order;  // w(n) ~ c |n|^order
  std::string label;

  [[nodiscard]] double weight(long n) const;
};

struct DensityMeasure {
  std::vector<numerics::Interval> support;
  std::function<double(double)> density;
  std::optional<double> density_order;  // density(t) ~ c |t|^order at infinity
  std::string label;
};

/// The scalar measure d(E(t)f, f) of a fixed element f. Immutable.
class SpectralMeasure {
 public:
  using Variant = std::variant<DiscreteMeasure, LatticeMeasure, DensityMeasure>;

  static SpectralMeasure discrete(std::vector<Atom> atoms);
  static SpectralMeasure lattice_finite(numerics::IndexSet set, std::map<long, double> weights);
  static SpectralMeasure lattice_uniform(numerics::IndexSet set, double weight);
  static SpectralMeasure lattice(numerics::IndexSet set, std::function<double(long)> weight,
                                 std::optional<double> weight_order, std::string label);
  /// Lebesgue measure (density one) on the real line.
  static SpectralMeasure lebesgue();
  static SpectralMeasure density(std::vector<numerics::Interval> support,
                                 std::function<double(double)> density,
                                 std::optional<double> density_order, std::string label);

  [[nodiscard]] const Variant& variant() const { return v_; }
  [[nodiscard]] bool is_discrete() const { return std::holds_alternative<DiscreteMeasure>(v_); }
  [[nodiscard]] bool unbounded_support() const;
  /// Points carrying mass when the support is finite.
  [[nodiscard]] std::optional<std::vector<Atom>> finite_atoms() const;
  /// Total mass ||f||^2; +inf for infinite lattices/densities with
  /// non-summable weight.
  [[nodiscard]] double total_mass() const;
  [[nodiscard]] std::string describe() const;

  /// Weights multiplied by c > 0.
  [[nodiscard]] SpectralMeasure scaled(double c) const;

 private:
  explicit SpectralMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace stechkin
