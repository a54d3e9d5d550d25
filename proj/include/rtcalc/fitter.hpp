#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtcalc/geometry.hpp"

namespace rtcalc {

/// Covariant components η_i.
struct OneForm {
  ContextPtr ctx;
  std::vector<Expr> eta;
};

/// η ⊗ η as a (0,2) tensor.
Tensor outer_square(const OneForm& eta);

/// A pointwise side condition `lhs = rhs`, applied by solving it for one atom.
struct Condition {
  Expr lhs;
  Expr rhs;
  AtomId eliminate;
};

struct ConditionError : ExprError {
  using ExprError::ExprError;
};

/// Value of the designated atom implied by the constraint. Throws
/// ConditionError if the atom is absent or the constraint is not linear in it.
Expr solve_condition(const Condition& c);
/// The input with the designated atom replaced by its solved value. A
/// constraint whose sides are identical changes nothing.
Expr substitute_condition(const Expr& e, const Condition& c);
Tensor substitute_condition(const Tensor& t, const Condition& c);
/// Rewrites each condition in terms of the atoms left after the earlier
/// ones, so that applying them in order keeps every one of them satisfied.
std::vector<Condition> chain_conditions(const std::vector<Condition>& conditions);

enum class FitStatus { exact, inconsistent, underdetermined };
enum class FitClass { collineation, inheritance, generalized_inheritance, none };

const char* to_string(FitStatus s);
const char* to_string(FitClass c);

/// Named basis tensors; the name doubles as the coefficient's label.
using Basis = std::vector<std::pair<std::string, Tensor>>;

struct FitResult {
  std::vector<std::pair<std::string, Expr>> coefficients;
  Tensor residual;  // target - Σ c_i B_i
  FitStatus status = FitStatus::exact;
  std::vector<std::string> free;  // basis names left at zero when underdetermined
  FitClass classification = FitClass::none;
  /// Soliton fits only: e.g. "almost η-Ricci soliton".
  std::string kind;

  const Expr& coefficient(std::string_view name) const;
};

struct FitOptions {
  /// Side conditions applied to target and basis, in order, before solving;
  /// see chain_conditions.
  std::vector<Condition> conditions;
  /// Component offsets in the order rows are offered for pivoting; all
  /// components in offset order when empty. Must be a permutation.
  std::vector<std::size_t> row_order;
};

/// Solve target = Σ c_i B_i over the field of rational functions.
FitResult fit(const Tensor& target, const Basis& basis, const FitOptions& opts = {});

/// L_ξ T against {T, g∧g, g∧S} (plus S∧S when `extended`).
FitResult fit_inheritance(const Geometry& geo, const Tensor& t, const VectorField& xi, bool extended,
                          const FitOptions& opts = {});
/// L_ξ S against {S, g}.
FitResult fit_ricci_inheritance(const Geometry& geo, const VectorField& xi, const FitOptions& opts = {});

/// ½ L_ξ g + S = μ g - λ η⊗η, reported as coefficients "mu" and "lambda".
FitResult fit_soliton(const Geometry& geo, const VectorField& xi, const std::optional<OneForm>& eta,
                      const FitOptions& opts = {});
/// ∇²ζ + S = μ g - λ η⊗η. Throws GeometryError if ½ L_{∇ζ} g differs from ∇²ζ.
FitResult fit_gradient_soliton(const Geometry& geo, const ScalarField& zeta, const std::optional<OneForm>& eta,
                               const FitOptions& opts = {});
/// ½ L_ξ g = ν g + λ η⊗η with ν = κ - μ, reported as "nu" and "lambda".
FitResult fit_yamabe(const Geometry& geo, const VectorField& xi, const std::optional<OneForm>& eta,
                     const FitOptions& opts = {});

/// True when every coordinate partial of e vanishes.
bool is_constant_on_chart(const Expr& e, const Context& ctx);

}  // namespace rtcalc
