#pragma once

#include "rtcalc/geometry.hpp"

namespace rtcalc {

/// Chart (t, r, x, y), constants a, b, d, μ1, μ2, μ3, c1, α, β, γ and the
/// free function f(x, y).
ContextPtr rt_context();

/// The Robinson-Trautman metric
///   g_tt = -2(a - 2br - d/r), g_tr = 1, g_xx = g_yy = -r^2/f^2.
const Metric& rt_metric();

/// Cached curvature of rt_metric().
const Geometry& rt_geometry();

}  // namespace rtcalc
