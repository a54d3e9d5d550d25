#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rtcalc/geometry.hpp"

namespace rtcalc {

/// A metric file:
///
///   # comment
///   [coordinates]
///   t r x y
///   [parameters]
///   a b d
///   [functions]
///   f(x, y)
///   [metric]
///   g_11 = -2*(a - 2*b*r - d/r)
///   g_12 = 1
///
/// Names are whitespace separated. Indices are 1-based with i <= j; write
/// g_i_j when the dimension exceeds 9. Unlisted components are zero.
struct MetricSpecError : std::runtime_error {
  MetricSpecError(std::size_t line, const std::string& message);
  std::size_t line;  // 1-based; 0 when not tied to a line
};

Metric parse_metric_spec(std::string_view text);
Metric load_metric_spec(const std::string& path);

}  // namespace rtcalc
