#pragma once

#include "rtcalc/geometry.hpp"

namespace rtcalc {

/// Coordinate Lie derivative of an all-covariant tensor of any rank:
///   (L_ξ T)_{i..} = ξ^m ∂_m T_{i..} + Σ_slots T_{..m..} ∂_{i_slot} ξ^m
Tensor lie(const VectorField& xi, const Tensor& t);
Tensor lie_02(const VectorField& xi, const Tensor& b);
Tensor lie_04(const VectorField& xi, const Tensor& t);

/// The same derivative assembled from covariant derivatives,
///   ξ^m ∇_m T_{i..} + Σ_slots T_{..m..} ∇_{i_slot} ξ^m,
/// which agrees with lie() for a torsion-free connection.
Tensor lie_covariant(const VectorField& xi, const Tensor& t, const Christoffel& gamma);

}  // namespace rtcalc
