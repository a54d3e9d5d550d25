#pragma once

#include <optional>
#include <vector>

#include "rtcalc/geometry.hpp"

namespace rtcalc {

/// n_k = 1/(1 + n - k) for k = 1, 2, 3.
struct DimensionConstants {
  std::size_t n;
  Expr n1, n2, n3;
  static DimensionConstants of(std::size_t n);
};

/// (phi ∧ psi)_pqrs = phi_ps psi_qr - phi_pr psi_qs + phi_qr psi_ps - phi_qs psi_pr
Tensor kulkarni_nomizu(const Tensor& phi, const Tensor& psi);

/// G_pqrs = g_ps g_qr - g_pr g_qs, assembled directly from the metric.
Tensor gaussian(const Geometry& geo);
/// C = R - n3 (S ∧ g) + κ n2 n3 G
Tensor weyl_conformal(const Geometry& geo);
/// W = R - κ n1 n2 G
Tensor concircular(const Geometry& geo);
/// K = R - n3 (S ∧ g)
Tensor conharmonic(const Geometry& geo);
/// P_pqrs = R_pqrs - n2 (g_sp S_qr - g_sq S_pr); the upper index sits in the last slot
/// and contracting it against the first slot gives zero.
Tensor weyl_projective(const Geometry& geo);

/// Exact checks of the curvature-type identities of a (0,4) tensor. A failed
/// property records the first index tuple (0-based) where it fails.
struct SymmetryReport {
  bool antisym_first_pair = true;   // T_pqrs = -T_qprs
  bool antisym_second_pair = true;  // T_pqrs = -T_pqsr
  bool pair_exchange = true;        // T_pqrs = T_rspq
  bool first_bianchi = true;        // T_pqrs + T_prsq + T_psqr = 0
  bool second_bianchi = true;       // ∇_t T_pqrs + ∇_p T_qtrs + ∇_q T_tprs = 0
  std::optional<std::vector<std::size_t>> antisym_first_pair_witness, antisym_second_pair_witness,
      pair_exchange_witness, first_bianchi_witness, second_bianchi_witness;

  bool generalized_curvature_tensor() const {
    return antisym_first_pair && antisym_second_pair && pair_exchange && first_bianchi;
  }
  bool proper() const { return generalized_curvature_tensor() && second_bianchi; }
};

SymmetryReport classify_gct(const Tensor& t, const Geometry& geo);

}  // namespace rtcalc
