#include "stechkin/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "stechkin/errors.hpp"

namespace stechkin {

using numerics::IndexSet;
using numerics::Interval;
using numerics::kInf;

double LatticeMeasure::weight(long n) const {
  if (set == IndexSet::nonnegative && n < 0) return 0.0;
  if (finite_support) {
    const auto it = weights.find(n);
    return it == weights.end() ? 0.0 : it->second;
  }
  return weight_fn(n);
}

SpectralMeasure SpectralMeasure::discrete(std::vector<Atom> atoms) {
  std::set<double> seen;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.t)) throw ConfigError("atom location must be finite");
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) throw ConfigError("atom weight must be finite and >= 0");
    if (!seen.insert(a.t).second) {
      std::ostringstream os;
      os.precision(17);
      os << "duplicate atom location " << a.t;
      throw ConfigError(os.str());
    }
  }
  return SpectralMeasure(DiscreteMeasure{std::move(atoms)});
}

SpectralMeasure SpectralMeasure::lattice_finite(IndexSet set, std::map<long, double> weights) {
  for (const auto& [n, w] : weights) {
    if (set == IndexSet::nonnegative && n < 0)
      throw ConfigError("negative index " + std::to_string(n) + " on Z+");
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("lattice weight must be finite and >= 0");
  }
  LatticeMeasure m;
  m.set = set;
  m.finite_support = true;
  m.weights = std::move(weights);
  m.label = "finite";
  return SpectralMeasure(std::move(m));
}

SpectralMeasure SpectralMeasure::lattice_uniform(IndexSet set, double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw ConfigError("uniform weight must be >= 0");
  if (weight == 0.0) return lattice_finite(set, {});
  std::ostringstream os;
  os.precision(17);
  os << "uniform:" << weight;
  return lattice(set, [weight](long) { return weight; }, 0.0, os.str());
}

SpectralMeasure SpectralMeasure::lattice(IndexSet set, std::function<double(long)> weight,
                                         std::optional<double> weight_order, std::string label) {
  if (!weight) throw ConfigError("lattice weight function missing");
  LatticeMeasure m;
  m.set = set;
  m.finite_support = false;
  m.weight_fn = std::move(weight);
  m.weight_order = weight_order;
  m.label = std::move(label);
  return SpectralMeasure(std::move(m));
}

SpectralMeasure SpectralMeasure::lebesgue() {
  return density({numerics::kRealLine}, [](double) { return 1.0; }, 0.0, "one");
}

SpectralMeasure SpectralMeasure::density(std::vector<Interval> support,
                                         std::function<double(double)> density,
                                         std::optional<double> density_order, std::string label) {
  if (!density) throw ConfigError("density function missing");
  std::sort(support.begin(), support.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(support[i].lo < support[i].hi)) throw ConfigError("density support interval is empty");
    if (i > 0 && support[i].lo < support[i - 1].hi)
      throw ConfigError("density support intervals overlap");
  }
  return SpectralMeasure(
      DensityMeasure{std::move(support), std::move(density), density_order, std::move(label)});
}

bool SpectralMeasure::unbounded_support() const {
  if (const auto* l = std::get_if<LatticeMeasure>(&v_)) return !l->finite_support;
  if (const auto* d = std::get_if<DensityMeasure>(&v_)) {
    return std::any_of(d->support.begin(), d->support.end(),
                       [](const Interval& i) { return !i.bounded(); });
  }
  return false;
}

std::optional<std::vector<Atom>> SpectralMeasure::finite_atoms() const {
  if (const auto* d = std::get_if<DiscreteMeasure>(&v_)) return d->atoms;
  if (const auto* l = std::get_if<LatticeMeasure>(&v_); l && l->finite_support) {
    std::vector<Atom> out;
    for (const auto& [n, w] : l->weights) out.push_back({static_cast<double>(n), w});
    return out;
  }
  return std::nullopt;
}

double SpectralMeasure::total_mass() const {
  if (auto atoms = finite_atoms()) {
    double s = 0.0;
    for (const auto& a : *atoms) s += a.w;
    return s;
  }
  if (const auto* l = std::get_if<LatticeMeasure>(&v_)) {
    if (l->weight_order && *l->weight_order >= -1.0) return kInf;
    const auto r = numerics::sum_lattice([l](long n) { return l->weight_fn(n); }, l->set);
    if (!r.ok()) return kInf;
    return r.value;
  }
  const auto& d = std::get<DensityMeasure>(v_);
  double s = 0.0;
  for (const auto& iv : d.support) {
    if (!iv.bounded() && (!d.density_order || *d.density_order >= -1.0)) return kInf;
    const auto r = numerics::integrate(d.density, iv);
    if (!r.ok()) return kInf;
    s += r.value;
  }
  return s;
}

std::string SpectralMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = std::get_if<DiscreteMeasure>(&v_)) {
    os << "discrete[" << d->atoms.size() << " atoms]";
  } else if (const auto* l = std::get_if<LatticeMeasure>(&v_)) {
    os << "lattice[" << numerics::to_string(l->set) << ", "
       << (l->finite_support ? std::to_string(l->weights.size()) + " weights" : l->label) << "]";
  } else {
    const auto& dm = std::get<DensityMeasure>(v_);
    os << "density[" << dm.label << " on";
    for (const auto& iv : dm.support) os << " [" << iv.lo << ", " << iv.hi << "]";
    os << "]";
  }
  return os.str();
}

SpectralMeasure SpectralMeasure::scaled(double c) const {
  if (!(c > 0.0)) throw ConfigError("scale factor must be positive");
  if (const auto* d = std::get_if<DiscreteMeasure>(&v_)) {
    auto atoms = d->atoms;
    for (auto& a : atoms) a.w *= c;
    return discrete(std::move(atoms));
  }
  if (const auto* l = std::get_if<LatticeMeasure>(&v_)) {
    LatticeMeasure m = *l;
    for (auto& [n, w] : m.weights) w *= c;
    if (!m.finite_support) {
      auto fn = m.weight_fn;
      m.weight_fn = [fn, c](long n) { return c * fn(n); };
    }
    return SpectralMeasure(std::move(m));
  }
  DensityMeasure m = std::get<DensityMeasure>(v_);
  auto fn = m.density;
  m.density = [fn, c](double t) { return c * fn(t); };
  return SpectralMeasure(std::move(m));
}

}  // namespace stechkin
