#pragma once

#include <string>

#include "json.hpp"
#include "stechkin/measure.hpp"
#include "stechkin/symbol.hpp"

namespace stechkin::io {

using Json = nlohmann::ordered_json;

/// Measure from a JSON document:
///   {"type":"discrete","atoms":[{"t":1,"w":1},...]}
///   {"type":"lattice","set":"Z"|"Z+","weights":{"0":1,...}}
///   {"type":"lattice","set":"Z","uniform":1.0,"cutoff_policy":"tail-bound"}
///   {"type":"density","support":[["-inf","inf"]],"density":"one"|"gaussian"|"exp"}
SpectralMeasure parse_measure(const nlohmann::json& doc);

/// A file path, or one of builtin:lebesgue, builtin:unit-lattice,
/// builtin:unit-lattice-nonneg.
SpectralMeasure load_measure(const std::string& source);

/// "pow:<alpha>", "zero" or "table:<path>" where the file maps integer keys
/// to a number or a [re, im] pair, optionally under "values".
Symbol parse_symbol(const std::string& descriptor);

/// Serializes with every number printed as %.17g; non-finite numbers are
/// written as the strings "inf", "-inf" and "nan".
std::string dump(const Json& j, int indent = 2);

}  // namespace stechkin::io
