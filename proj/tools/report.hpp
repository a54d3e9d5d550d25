#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rtcalc/fitter.hpp"
#include "rtcalc/fixtures.hpp"

namespace rtcalc::report {

using Json = nlohmann::json;  // std::map objects: keys always sorted

inline constexpr std::string_view kEngineVersion = "1.0.0";

enum class Format { text, json };

/// Canonical string of e, or "<N terms>" when it has more than max_terms
/// terms (numerator plus denominator); 0 means unlimited.
std::string expr_string(const Expr& e, std::size_t max_terms);

/// Nonzero components in ascending offset order, 1-based indices.
Json components(const Tensor& t, std::size_t max_terms);
Json fit_result(const FitResult& r, std::size_t max_terms);
Json verification(const VerificationReport& r);

/// Wraps a payload with the command echo, engine version and seed.
Json envelope(const std::vector<std::string>& command, std::uint64_t seed, Json result);

/// JSON: 2-space indented, sorted keys, trailing newline. Text: one
/// "path: value" line per scalar leaf, values JSON-encoded, so the JSON
/// document can be rebuilt from it exactly.
std::string render(const Json& doc, Format format);

/// Inverse of the text rendering.
Json parse_text(std::string_view text);

}  // namespace rtcalc::report
