#include "stechkin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stechkin/errors.hpp"

namespace stechkin::io {

using numerics::IndexSet;
using numerics::Interval;
using numerics::kInf;

namespace {

nlohmann::json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

double number_or_inf(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError("expected a number or \"inf\"/\"-inf\", got " + v.dump());
}

long parse_index(const std::string& key) {
  std::size_t used = 0;
  long n = 0;
  try {
    n = std::stol(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw ConfigError("lattice key '" + key + "' is not an integer");
  return n;
}

IndexSet parse_set(const nlohmann::json& doc) {
  const auto s = doc.value("set", std::string("Z"));
  if (s == "Z") return IndexSet::integers;
  if (s == "Z+") return IndexSet::nonnegative;
  throw ConfigError("lattice set must be \"Z\" or \"Z+\", got \"" + s + "\"");
}

}  // namespace

SpectralMeasure parse_measure(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("type")) throw ConfigError("measure needs a \"type\" field");
  const auto type = doc["type"].get<std::string>();
  try {
    if (type == "discrete") {
      std::vector<Atom> atoms;
      for (const auto& a : doc.at("atoms")) atoms.push_back({a.at("t").get<double>(), a.at("w").get<double>()});
      return SpectralMeasure::discrete(std::move(atoms));
    }
    if (type == "lattice") {
      const auto set = parse_set(doc);
      if (doc.contains("uniform")) {
        const auto policy = doc.value("cutoff_policy", std::string("tail-bound"));
        if (policy != "tail-bound") throw ConfigError("unsupported cutoff_policy \"" + policy + "\"");
        return SpectralMeasure::lattice_uniform(set, doc["uniform"].get<double>());
      }
      std::map<long, double> w;
      for (const auto& [k, v] : doc.at("weights").items()) w[parse_index(k)] = v.get<double>();
      return SpectralMeasure::lattice_finite(set, std::move(w));
    }
    if (type == "density") {
      std::vector<Interval> support;
      for (const auto& iv : doc.at("support")) {
        if (!iv.is_array() || iv.size() != 2) throw ConfigError("support intervals are [lo, hi] pairs");
        support.push_back({number_or_inf(iv[0]), number_or_inf(iv[1])});
      }
      const auto name = doc.value("density", std::string("one"));
      if (name == "one") return SpectralMeasure::density(support, [](double) { return 1.0; }, 0.0, name);
      if (name == "gaussian")
        return SpectralMeasure::density(support, [](double t) { return std::exp(-t * t); }, -kInf, name);
      if (name == "exp")
        return SpectralMeasure::density(support, [](double t) { return std::exp(-std::abs(t)); }, -kInf,
                                        name);
      throw ConfigError("unknown density \"" + name + "\" (one, gaussian, exp)");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed " + type + " measure: " + e.what());
  }
  throw ConfigError("unknown measure type \"" + type + "\"");
}

SpectralMeasure load_measure(const std::string& source) {
  if (source == "builtin:lebesgue") return SpectralMeasure::lebesgue();
  if (source == "builtin:unit-lattice") return SpectralMeasure::lattice_uniform(IndexSet::integers, 1.0);
  if (source == "builtin:unit-lattice-nonneg")
    return SpectralMeasure::lattice_uniform(IndexSet::nonnegative, 1.0);
  if (source.rfind("builtin:", 0) == 0) throw ConfigError("unknown builtin measure " + source);
  return parse_measure(read_file(source));
}

Symbol parse_symbol(const std::string& descriptor) {
  if (descriptor == "zero") return Symbol::zero();
  if (descriptor.rfind("pow:", 0) == 0) {
    const auto rest = descriptor.substr(4);
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) throw ConfigError("bad exponent in symbol '" + descriptor + "'");
    if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("power exponent must be >= 0");
    return Symbol::power(a);
  }
  if (descriptor.rfind("table:", 0) == 0) {
    auto doc = read_file(descriptor.substr(6));
    if (doc.contains("values")) doc = doc["values"];
    if (!doc.is_object()) throw ConfigError("table symbol file must be an object of index -> value");
    std::map<long, std::complex<double>> values;
    for (const auto& [k, v] : doc.items()) {
      if (v.is_number()) {
        values[parse_index(k)] = v.get<double>();
      } else if (v.is_array() && v.size() == 2) {
        values[parse_index(k)] = {v[0].get<double>(), v[1].get<double>()};
      } else {
        throw ConfigError("table value for key " + k + " must be a number or [re, im]");
      }
    }
    return Symbol::table(std::move(values));
  }
  throw ConfigError("unknown symbol descriptor '" + descriptor + "' (pow:<alpha>, zero, table:<path>)");
}

namespace {

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(k).dump() << (indent > 0 ? ": " : ":");
        write(os, v, indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        write(os, v, indent, depth + 1);
      }
      pad(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isnan(x)) {
        os << "\"nan\"";
      } else if (std::isinf(x)) {
        os << (x > 0 ? "\"inf\"" : "\"-inf\"");
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
      }
      return;
    }
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

}  // namespace stechkin::io
