#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "free_space.hpp"
#include "lip_core.hpp"
#include "metric_space.hpp"

namespace freelip {

using Json = nlohmann::ordered_json;

// Exact values are written as "p/q" strings; integers as "n".
Json rational_to_json(const Rational& value);
// Accepts "p/q", decimal strings and JSON numbers. Throws ParseError.
Rational rational_from_json(const Json& value);

// {"labels": [...], "base": label, "backend": "exact"|"float", "dist": [[...]]}.
Json space_to_json(const MetricSpace& space);
// A base override replaces the "base" field; tol applies to float spaces.
// Throws ParseError on malformed documents and the metric errors on invalid
// matrices.
SpacePtr space_from_json(const Json& doc, const std::optional<std::string>& base = std::nullopt,
                         double tol = kDefaultTolerance);

// Header row of labels, then one row of distances per label.
SpacePtr space_from_csv(std::string_view text, const std::string& base);
std::string space_to_csv(const MetricSpace& space);

// Reads a metric file, choosing CSV by the .csv extension. CSV requires a base.
SpacePtr load_space(const std::string& path, const std::optional<std::string>& base = std::nullopt,
                    double tol = kDefaultTolerance);

// {"space": <path or inline metric>, "values": {label: value}}. A path is
// resolved against `dir`. The base may be omitted and must be 0 when given;
// every other label must be present.
LipFunction function_from_json(const Json& doc, const std::string& dir = ".");
Json function_to_json(const LipFunction& f, bool with_space = false);
LipFunction load_function(const std::string& path);

// {"space": ..., "coeffs": {label: value}}; absent labels are 0.
FreeVector vector_from_json(const Json& doc, const std::string& dir = ".");
Json vector_to_json(const FreeVector& mu, bool with_space = false);
FreeVector load_vector(const std::string& path);

Json parse_json_text(std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace freelip
