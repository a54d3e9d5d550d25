#include "rtcalc/fitter.hpp"

#include <algorithm>

#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"

namespace rtcalc {

Tensor outer_square(const OneForm& eta) {
  std::size_t n = eta.ctx->dimension();
  if (eta.eta.size() != n) throw GeometryError("one-form has the wrong number of components");
  Tensor out(eta.ctx, 2, "η⊗η");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = eta.eta[i] * eta.eta[j];
  return out;
}

// ---------------------------------------------------------------- conditions

Expr solve_condition(const Condition& c) {
  Expr diff = c.lhs - c.rhs;
  const Poly& num = diff.num();
  if (!diff.contains(c.eliminate))
    throw ConditionError("constraint does not involve " + atom_name(c.eliminate));
  std::vector<Poly> coeffs = num.coefficients_in(c.eliminate);
  if (coeffs.size() != 2) throw ConditionError("constraint is not linear in " + atom_name(c.eliminate));
  return -Expr::fraction(coeffs[0], Poly(1)) / Expr::fraction(coeffs[1], Poly(1));
}

Expr substitute_condition(const Expr& e, const Condition& c) {
  if (c.lhs == c.rhs) return e;
  return substitute(e, c.eliminate, solve_condition(c));
}

std::vector<Condition> chain_conditions(const std::vector<Condition>& conditions) {
  std::vector<Condition> out;
  out.reserve(conditions.size());
  for (Condition c : conditions) {
    for (const Condition& prev : out) {
      c.lhs = substitute_condition(c.lhs, prev);
      c.rhs = substitute_condition(c.rhs, prev);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Tensor substitute_condition(const Tensor& t, const Condition& c) {
  if (c.lhs == c.rhs) return t;
  Expr value = solve_condition(c);
  Tensor out = t;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = substitute(out[k], c.eliminate, value);
  return out;
}

// ---------------------------------------------------------------- fit

const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::exact: return "Exact";
    case FitStatus::inconsistent: return "Inconsistent";
    case FitStatus::underdetermined: return "Underdetermined";
  }
  return "?";
}

const char* to_string(FitClass c) {
  switch (c) {
    case FitClass::collineation: return "Collineation";
    case FitClass::inheritance: return "Inheritance";
    case FitClass::generalized_inheritance: return "GeneralizedInheritance";
    case FitClass::none: return "None";
  }
  return "?";
}

const Expr& FitResult::coefficient(std::string_view name) const {
  for (const auto& [n, c] : coefficients)
    if (n == name) return c;
  throw std::out_of_range("no coefficient named " + std::string(name));
}

FitResult fit(const Tensor& target_in, const Basis& basis_in, const FitOptions& opts) {
  if (basis_in.empty()) throw GeometryError("fit needs at least one basis tensor");
  Tensor target = target_in;
  Basis basis = basis_in;
  for (const auto& [name, b] : basis) require_same_shape(target, b);
  for (const Condition& c : chain_conditions(opts.conditions)) {
    target = substitute_condition(target, c);
    for (auto& entry : basis) entry.second = substitute_condition(entry.second, c);
  }

  const std::size_t k = basis.size(), m = target.size();
  std::vector<std::size_t> order = opts.row_order;
  if (order.empty()) {
    order.resize(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
  } else {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m; ++i)
      if (sorted.size() != m || sorted[i] != i) throw GeometryError("row order is not a permutation");
  }

  // Reduced rows [c_0 .. c_{k-1} | rhs], each normalized to 1 at its pivot column.
  std::vector<std::pair<std::size_t, std::vector<Expr>>> pivots;
  for (std::size_t off : order) {
    std::vector<Expr> row(k + 1);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) any |= !(row[i] = basis[i].second[off]).is_zero();
    row[k] = target[off];
    if (!any && row[k].is_zero()) continue;
    for (const auto& [col, prow] : pivots) {
      if (row[col].is_zero()) continue;
      Expr factor = row[col];
      for (std::size_t j = 0; j <= k; ++j)
        if (!prow[j].is_zero()) row[j] -= factor * prow[j];
    }
    std::size_t col = 0;
    while (col < k && row[col].is_zero()) ++col;
    if (col == k) continue;  // consistency is settled by the residual below
    Expr inv = Expr(1) / row[col];
    for (std::size_t j = col; j <= k; ++j)
      if (!row[j].is_zero()) row[j] *= inv;
    for (auto& [pc, prow] : pivots) {
      if (prow[col].is_zero()) continue;
      Expr factor = prow[col];
      for (std::size_t j = 0; j <= k; ++j)
        if (!row[j].is_zero()) prow[j] -= factor * row[j];
    }
    pivots.emplace_back(col, std::move(row));
    if (pivots.size() == k) break;
  }

  FitResult out;
  std::vector<Expr> coef(k);
  std::vector<bool> pivoted(k, false);
  for (const auto& [col, prow] : pivots) {
    coef[col] = prow[k];
    pivoted[col] = true;
  }
  out.residual = target;
  out.residual.set_name("residual");
  for (std::size_t i = 0; i < k; ++i) {
    out.coefficients.emplace_back(basis[i].first, coef[i]);
    if (!pivoted[i]) out.free.push_back(basis[i].first);
    if (!coef[i].is_zero()) out.residual = out.residual - basis[i].second.scaled(coef[i]);
  }

  if (!out.residual.is_zero()) {
    out.status = FitStatus::inconsistent;
    out.free.clear();
    out.classification = FitClass::none;
    return out;
  }
  out.status = out.free.empty() ? FitStatus::exact : FitStatus::underdetermined;
  bool rest_zero = std::all_of(coef.begin() + 1, coef.end(), [](const Expr& e) { return e.is_zero(); });
  if (target.is_zero())
    out.classification = FitClass::collineation;
  else if (rest_zero)
    out.classification = FitClass::inheritance;
  else
    out.classification = FitClass::generalized_inheritance;
  return out;
}

// ---------------------------------------------------------------- named fits

FitResult fit_inheritance(const Geometry& geo, const Tensor& t, const VectorField& xi, bool extended,
                          const FitOptions& opts) {
  const Tensor& g = geo.metric().tensor();
  const Tensor& S = geo.ricci();
  Basis basis{{t.name().empty() ? "T" : t.name(), t},
              {"g∧g", kulkarni_nomizu(g, g)},
              {"g∧S", kulkarni_nomizu(g, S)}};
  if (extended) basis.emplace_back("S∧S", kulkarni_nomizu(S, S));
  return fit(lie(xi, t), basis, opts);
}

FitResult fit_ricci_inheritance(const Geometry& geo, const VectorField& xi, const FitOptions& opts) {
  return fit(lie(xi, geo.ricci()), Basis{{"S", geo.ricci()}, {"g", geo.metric().tensor()}}, opts);
}

namespace {

void classify_soliton(FitResult& r, const Context& ctx, bool has_eta, bool gradient) {
  if (r.status == FitStatus::inconsistent) {
    r.kind = "none";
    return;
  }
  bool constant = true;
  for (const auto& [name, c] : r.coefficients) constant = constant && is_constant_on_chart(c, ctx);
  std::string kind = constant ? "" : "almost ";
  if (gradient) kind += "gradient ";
  if (has_eta) kind += "η-";
  kind += "Ricci soliton";
  const Expr& mu = r.coefficient("mu");
  if (constant && mu.is_constant()) {
    int sign = sgn(mu.constant_value());
    kind += sign == 0 ? " (steady)" : sign > 0 ? " (shrinking)" : " (expanding)";
  }
  r.kind = kind;
}

FitResult soliton_fit(const Geometry& geo, const Tensor& lhs, const std::optional<OneForm>& eta,
                      const FitOptions& opts, bool gradient) {
  Basis basis{{"mu", geo.metric().tensor().scaled(Expr(-1))}};
  if (eta) basis.emplace_back("lambda", outer_square(*eta));
  FitResult r = fit((lhs + geo.ricci()).scaled(Expr(-1)), basis, opts);
  classify_soliton(r, geo.ctx(), eta.has_value(), gradient);
  return r;
}

}  // namespace

FitResult fit_soliton(const Geometry& geo, const VectorField& xi, const std::optional<OneForm>& eta,
                      const FitOptions& opts) {
  return soliton_fit(geo, lie_02(xi, geo.metric().tensor()).scaled(Expr(mpq_class(1, 2))), eta, opts, false);
}

FitResult fit_gradient_soliton(const Geometry& geo, const ScalarField& zeta, const std::optional<OneForm>& eta,
                               const FitOptions& opts) {
  Tensor hess = hessian(geo, zeta);
  Tensor half_lie = lie_02(gradient(geo, zeta), geo.metric().tensor()).scaled(Expr(mpq_class(1, 2)));
  if (!(half_lie == hess)) throw GeometryError("½ L_∇ζ g differs from the Hessian of ζ");
  return soliton_fit(geo, hess, eta, opts, true);
}

FitResult fit_yamabe(const Geometry& geo, const VectorField& xi, const std::optional<OneForm>& eta,
                     const FitOptions& opts) {
  Basis basis{{"nu", geo.metric().tensor()}};
  if (eta) basis.emplace_back("lambda", outer_square(*eta));
  return fit(lie_02(xi, geo.metric().tensor()).scaled(Expr(mpq_class(1, 2))), basis, opts);
}

bool is_constant_on_chart(const Expr& e, const Context& ctx) {
  for (std::size_t i = 0; i < ctx.dimension(); ++i)
    if (!differentiate(e, ctx.coordinate(i)).is_zero()) return false;
  return true;
}

}  // namespace rtcalc
