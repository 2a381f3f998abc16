#include "stechkin/symbol.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stechkin/errors.hpp"

namespace stechkin {

Symbol Symbol::power(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ConfigError("power symbol needs a finite exponent alpha >= 0");
  Symbol s;
  s.kind_ = Kind::power;
  s.alpha_ = alpha;
  s.integer_power_ = alpha == std::floor(alpha);
  s.growth_ = alpha;
  return s;
}

Symbol Symbol::zero() {
  Symbol s;
  s.kind_ = Kind::zero;
  s.growth_ = 0.0;
  return s;
}

Symbol Symbol::table(std::map<long, std::complex<double>> values) {
  Symbol s;
  s.kind_ = Kind::table;
  for (const auto& [n, v] : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ConfigError("table symbol value at " + std::to_string(n) + " is not finite");
  }
  s.table_ = std::move(values);
  s.growth_ = 0.0;
  return s;
}

Symbol Symbol::custom(std::function<std::complex<double>(double)> fn,
                      std::optional<double> growth_order, std::string label) {
  if (!fn) throw ConfigError("custom symbol needs a callable");
  Symbol s;
  s.kind_ = Kind::custom;
  s.fn_ = std::move(fn);
  s.growth_ = growth_order;
  s.label_ = std::move(label);
  return s;
}

std::complex<double> Symbol::operator()(double t) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::power:
      if (alpha_ == 0.0) return 1.0;
      return integer_power_ ? std::pow(t, alpha_) : std::pow(std::abs(t), alpha_);
    case Kind::table: {
      const double r = std::round(t);
      if (std::abs(t - r) > 1e-9) return 0.0;
      const auto it = table_.find(static_cast<long>(r));
      return it == table_.end() ? std::complex<double>{} : it->second;
    }
    case Kind::custom: return fn_(t);
  }
  return 0.0;
}

double Symbol::modulus(double t) const {
  if (kind_ == Kind::power) return alpha_ == 0.0 ? 1.0 : std::pow(std::abs(t), alpha_);
  return std::abs((*this)(t));
}

std::optional<double> Symbol::exact_order() const {
  switch (kind_) {
    case Kind::power: return alpha_;
    case Kind::zero:
    case Kind::table: return -std::numeric_limits<double>::infinity();
    case Kind::custom: return std::nullopt;
  }
  return std::nullopt;
}

bool Symbol::identically_zero() const {
  if (kind_ == Kind::zero) return true;
  if (kind_ == Kind::table) {
    for (const auto& [n, v] : table_)
      if (v != std::complex<double>{}) return false;
    return true;
  }
  return false;
}

std::optional<long> Symbol::support_radius() const {
  if (kind_ == Kind::zero) return 0;
  if (kind_ != Kind::table) return std::nullopt;
  long r = 0;
  for (const auto& [n, v] : table_)
    if (v != std::complex<double>{}) r = std::max(r, std::abs(n));
  return r;
}

std::string Symbol::descriptor() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::power: os << "pow:" << alpha_; break;
    case Kind::zero: os << "zero"; break;
    case Kind::table: os << "table[" << table_.size() << "]"; break;
    case Kind::custom: os << label_; break;
  }
  return os.str();
}

}  // namespace stechkin
