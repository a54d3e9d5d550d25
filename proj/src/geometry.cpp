#include "rtcalc/geometry.hpp"

namespace rtcalc {

namespace {

std::size_t ipow(std::size_t n, unsigned k) {
  std::size_t s = 1;
  for (unsigned i = 0; i < k; ++i) s *= n;
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Tensor

Tensor::Tensor(ContextPtr ctx, unsigned rank, std::string name)
    : ctx_(std::move(ctx)), rank_(rank), n_(ctx_->dimension()), c_(ipow(n_, rank)), name_(std::move(name)) {}

Tensor::Tensor(ContextPtr ctx, unsigned rank, std::vector<Expr> components, std::string name)
    : ctx_(std::move(ctx)), rank_(rank), n_(ctx_->dimension()), c_(std::move(components)), name_(std::move(name)) {
  if (c_.size() != ipow(n_, rank_)) throw GeometryError("tensor component count does not match its shape");
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
  if (idx.size() != rank_) throw GeometryError("wrong number of indices");
  std::size_t off = 0;
  for (std::size_t i : idx) {
    if (i >= n_) throw GeometryError("index out of range");
    off = off * n_ + i;
  }
  return off;
}

std::vector<std::size_t> Tensor::indices_of(std::size_t off) const {
  std::vector<std::size_t> idx(rank_);
  for (unsigned k = rank_; k-- > 0;) {
    idx[k] = off % n_;
    off /= n_;
  }
  return idx;
}

bool Tensor::is_zero() const {
  for (const auto& e : c_)
    if (!e.is_zero()) return false;
  return true;
}

Tensor Tensor::scaled(const Expr& c) const {
  Tensor out(ctx_, rank_, name_);
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * c;
  return out;
}

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (!a.context() || !b.context() || !(*a.context() == *b.context()))
    throw GeometryError("tensors live on different contexts");
  if (a.rank() != b.rank()) throw GeometryError("tensor ranks differ");
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out(a.ctx_, a.rank_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out(a.ctx_, a.rank_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
  return out;
}

bool operator==(const Tensor& a, const Tensor& b) { return a.rank_ == b.rank_ && a.c_ == b.c_; }

// ---------------------------------------------------------------- Metric

Expr determinant(const std::vector<Expr>& m, std::size_t n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  Expr det;
  std::vector<Expr> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col].is_zero()) continue;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != col) minor[(i - 1) * (n - 1) + jj++] = m[i * n + j];
    Expr term = m[col] * determinant(minor, n - 1);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Metric::Metric(ContextPtr ctx, std::vector<Expr> g) : ctx_(std::move(ctx)), g_(ctx_, 2, std::move(g), "g") {
  std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g_(i, j) != g_(j, i)) throw GeometryError("metric is not symmetric");
  det_ = rtcalc::determinant(g_.components(), n);
  if (det_.is_zero()) throw GeometryError("metric is degenerate");
}

std::vector<Expr> inverse_metric(const Metric& g) {
  std::size_t n = g.dim();
  const auto& m = g.tensor().components();
  std::vector<Expr> inv(n * n);
  if (n == 1) {
    inv[0] = Expr(1) / m[0];
    return inv;
  }
  std::vector<Expr> minor((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // cofactor of entry (j, i)
      for (std::size_t a = 0, aa = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, bb = 0; b < n; ++b)
          if (b != i) minor[aa * (n - 1) + bb++] = m[a * n + b];
        ++aa;
      }
      Expr c = determinant(minor, n - 1);
      if ((i + j) % 2) c = -c;
      inv[i * n + j] = inv[j * n + i] = c / g.determinant();
    }
  }
  return inv;
}

Christoffel christoffel(const Metric& g, const std::vector<Expr>& ginv) {
  std::size_t n = g.dim();
  std::vector<Expr> dg(n * n * n);  // dg[m][i][j] = d_m g_ij
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        dg[(m * n + i) * n + j] = dg[(m * n + j) * n + i] = differentiate(g(i, j), g.ctx().coordinate(m));
  auto d = [&](std::size_t m, std::size_t i, std::size_t j) -> const Expr& { return dg[(m * n + i) * n + j]; };
  Christoffel gamma{n, std::vector<Expr>(n * n * n)};
  const Expr half(mpq_class(1, 2));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Expr> lower(n);  // Gamma_{m ij}
      for (std::size_t m = 0; m < n; ++m) lower[m] = d(i, m, j) + d(j, m, i) - d(m, i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Expr s;
        for (std::size_t m = 0; m < n; ++m)
          if (!ginv[k * n + m].is_zero() && !lower[m].is_zero()) s += ginv[k * n + m] * lower[m];
        s *= half;
        gamma.c[(k * n + i) * n + j] = gamma.c[(k * n + j) * n + i] = s;
      }
    }
  }
  return gamma;
}

Christoffel christoffel(const Metric& g) { return christoffel(g, inverse_metric(g)); }

// ---------------------------------------------------------------- curvature

Geometry::Geometry(Metric g) : g_(std::move(g)) {
  const ContextPtr& ctx = g_.context();
  std::size_t n = dim();
  ginv_ = inverse_metric(g_);
  gamma_ = rtcalc::christoffel(g_, ginv_);
  const Christoffel& G = gamma_;

  // dG[m][a][q][s] = d_m Gamma^a_qs
  std::vector<Expr> dG(n * n * n * n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t s = q; s < n; ++s)
          dG[((m * n + a) * n + q) * n + s] = dG[((m * n + a) * n + s) * n + q] =
              differentiate(G(a, q, s), ctx->coordinate(m));
  auto dg = [&](std::size_t m, std::size_t a, std::size_t q, std::size_t s) -> const Expr& {
    return dG[((m * n + a) * n + q) * n + s];
  };

  riemann_ = Tensor(ctx, 4, "R");
  std::vector<Expr> up(n);  // R^a_qrs for fixed q, r, s
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = r + 1; s < n; ++s) {
        for (std::size_t a = 0; a < n; ++a) {
          Expr v = dg(r, a, q, s) - dg(s, a, q, r);
          for (std::size_t b = 0; b < n; ++b) {
            if (!G(b, q, s).is_zero() && !G(a, b, r).is_zero()) v += G(b, q, s) * G(a, b, r);
            if (!G(b, q, r).is_zero() && !G(a, b, s).is_zero()) v -= G(b, q, r) * G(a, b, s);
          }
          up[a] = v;
        }
        for (std::size_t p = 0; p < n; ++p) {
          Expr v;
          for (std::size_t a = 0; a < n; ++a)
            if (!g_(p, a).is_zero() && !up[a].is_zero()) v += g_(p, a) * up[a];
          riemann_(p, q, r, s) = v;
          riemann_(p, q, s, r) = -v;
        }
      }
    }
  }

  ricci_ = Tensor(ctx, 2, "S");
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = q; r < n; ++r) {
      Expr v;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t s = 0; s < n; ++s)
          if (!ginv_[p * n + s].is_zero() && !riemann_(p, q, r, s).is_zero())
            v += ginv_[p * n + s] * riemann_(p, q, r, s);
      ricci_(q, r) = ricci_(r, q) = v;
    }
  }

  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < n; ++r)
      if (!ginv_[q * n + r].is_zero() && !ricci_(q, r).is_zero()) kappa_ += ginv_[q * n + r] * ricci_(q, r);
}

Tensor Geometry::einstein() const {
  Tensor out = ricci_ - g_.tensor().scaled(kappa_ * Expr(mpq_class(1, 2)));
  out.set_name("E");
  return out;
}

Tensor riemann(const Metric& g) { return Geometry(g).riemann(); }
Tensor ricci(const Metric& g) { return Geometry(g).ricci(); }
ScalarField scalar_curvature(const Metric& g) { return {Geometry(g).scalar()}; }
Tensor einstein(const Metric& g) { return Geometry(g).einstein(); }

// ---------------------------------------------------------------- scalar fields

VectorField gradient(const Geometry& geo, const ScalarField& zeta) {
  std::size_t n = geo.dim();
  std::vector<Expr> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = differentiate(zeta.value, geo.ctx().coordinate(j));
  VectorField v{geo.context(), std::vector<Expr>(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v.xi[i] += geo.inverse(i, j) * d[j];
  return v;
}

Tensor hessian(const Geometry& geo, const ScalarField& zeta) {
  std::size_t n = geo.dim();
  const Context& ctx = geo.ctx();
  std::vector<Expr> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = differentiate(zeta.value, ctx.coordinate(k));
  Tensor h(geo.context(), 2, "hess");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Expr v = differentiate(d[j], ctx.coordinate(i));
      for (std::size_t k = 0; k < n; ++k) v -= geo.christoffel()(k, i, j) * d[k];
      h(i, j) = h(j, i) = v;
    }
  }
  return h;
}

VectorField gradient(const Metric& g, const ScalarField& zeta) { return gradient(Geometry(g), zeta); }
Tensor hessian(const Metric& g, const ScalarField& zeta) { return hessian(Geometry(g), zeta); }

Tensor partial(const Tensor& t, std::size_t m) {
  Tensor out(t.context(), t.rank(), t.name());
  AtomId x = t.context()->coordinate(m);
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = differentiate(t[k], x);
  return out;
}

Tensor covariant_derivative(const Tensor& t, const Christoffel& gamma) {
  std::size_t n = t.dim();
  unsigned k = t.rank();
  Tensor out(t.context(), k + 1, "nabla " + t.name());
  std::size_t block = t.size();
  std::vector<std::size_t> stride(k);
  for (unsigned s = 0; s < k; ++s) stride[s] = ipow(n, k - 1 - s);
  for (std::size_t m = 0; m < n; ++m) {
    Tensor dt = partial(t, m);
    for (std::size_t off = 0; off < block; ++off) {
      Expr v = dt[off];
      std::vector<std::size_t> idx = t.indices_of(off);
      for (unsigned s = 0; s < k; ++s) {
        std::size_t base = off - idx[s] * stride[s];
        for (std::size_t l = 0; l < n; ++l) {
          const Expr& c = gamma(l, m, idx[s]);
          const Expr& tv = t[base + l * stride[s]];
          if (!c.is_zero() && !tv.is_zero()) v -= c * tv;
        }
      }
      out[m * block + off] = v;
    }
  }
  return out;
}

VectorField coordinate_field(const ContextPtr& ctx, std::size_t i) {
  VectorField v{ctx, std::vector<Expr>(ctx->dimension())};
  v.xi.at(i) = Expr(1);
  return v;
}

}  // namespace rtcalc
