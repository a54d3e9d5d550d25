#include "rtcalc/lie.hpp"

namespace rtcalc {

namespace {

void check_field(const VectorField& xi, const Tensor& t) {
  if (!xi.ctx || !(*xi.ctx == *t.context())) throw GeometryError("vector field and tensor live on different contexts");
  if (xi.xi.size() != t.dim()) throw GeometryError("vector field has the wrong number of components");
}

std::vector<std::size_t> strides(const Tensor& t) {
  std::vector<std::size_t> st(t.rank());
  std::size_t s = 1;
  for (unsigned k = t.rank(); k-- > 0;) {
    st[k] = s;
    s *= t.dim();
  }
  return st;
}

// Shared assembly: advection terms from `flow[m]` (the m-th derivative of
// T, weighted by ξ^m) and transport terms with the matrix grad[i][m].
Tensor assemble(const VectorField& xi, const Tensor& t, const std::vector<Tensor>& derivs,
                const std::vector<Expr>& grad) {
  std::size_t n = t.dim();
  Tensor out(t.context(), t.rank(), "L " + t.name());
  std::vector<std::size_t> st = strides(t);
  for (std::size_t off = 0; off < t.size(); ++off) {
    Expr v;
    for (std::size_t m = 0; m < n; ++m)
      if (!xi.xi[m].is_zero() && !derivs[m][off].is_zero()) v += xi.xi[m] * derivs[m][off];
    std::vector<std::size_t> idx = t.indices_of(off);
    for (unsigned s = 0; s < t.rank(); ++s) {
      std::size_t base = off - idx[s] * st[s];
      for (std::size_t m = 0; m < n; ++m) {
        const Expr& dx = grad[idx[s] * n + m];
        const Expr& tv = t[base + m * st[s]];
        if (!dx.is_zero() && !tv.is_zero()) v += tv * dx;
      }
    }
    out[off] = v;
  }
  return out;
}

}  // namespace

Tensor lie(const VectorField& xi, const Tensor& t) {
  check_field(xi, t);
  std::size_t n = t.dim();
  const Context& ctx = *t.context();
  std::vector<Tensor> derivs(n);
  for (std::size_t m = 0; m < n; ++m)
    derivs[m] = xi.xi[m].is_zero() ? Tensor(t.context(), t.rank()) : partial(t, m);
  std::vector<Expr> grad(n * n);  // grad[i][m] = ∂_i ξ^m
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) grad[i * n + m] = differentiate(xi.xi[m], ctx.coordinate(i));
  return assemble(xi, t, derivs, grad);
}

Tensor lie_02(const VectorField& xi, const Tensor& b) {
  if (b.rank() != 2) throw GeometryError("lie_02 needs a (0,2) tensor");
  return lie(xi, b);
}

Tensor lie_04(const VectorField& xi, const Tensor& t) {
  if (t.rank() != 4) throw GeometryError("lie_04 needs a (0,4) tensor");
  return lie(xi, t);
}

Tensor lie_covariant(const VectorField& xi, const Tensor& t, const Christoffel& gamma) {
  check_field(xi, t);
  std::size_t n = t.dim();
  const Context& ctx = *t.context();
  Tensor d = covariant_derivative(t, gamma);
  std::vector<Tensor> derivs(n, Tensor(t.context(), t.rank()));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t off = 0; off < t.size(); ++off) derivs[m][off] = d[m * t.size() + off];
  std::vector<Expr> grad(n * n);  // ∇_i ξ^m
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      Expr v = differentiate(xi.xi[m], ctx.coordinate(i));
      for (std::size_t k = 0; k < n; ++k)
        if (!xi.xi[k].is_zero()) v += gamma(m, i, k) * xi.xi[k];
      grad[i * n + m] = v;
    }
  return assemble(xi, t, derivs, grad);
}

}  // namespace rtcalc
