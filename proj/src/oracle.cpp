#include "rtcalc/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace rtcalc::oracle {

mpq_class Sampler::draw() {
  std::uniform_int_distribution<int> pick(1, 2 * range_);
  auto nonzero = [&] {
    int v = pick(rng_);
    return v <= range_ ? v - range_ - 1 : v - range_;
  };
  mpq_class q(nonzero(), nonzero());
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- series

struct Series::Space {
  std::size_t n;
  unsigned order;
  std::vector<std::vector<unsigned>> exps;
  std::vector<unsigned> degree;
  std::map<std::vector<unsigned>, std::size_t> index;
  struct Triple {
    std::size_t i, j, k;
    unsigned deg;
  };
  std::vector<Triple> products;  // sorted by result degree
  // derivative[v][i] = (source index, multiplier) producing coefficient i of ∂_v
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> derivative;

  Space(std::size_t vars, unsigned k) : n(vars), order(k) {
    std::vector<unsigned> e(n, 0);
    enumerate(e, 0, k);
    std::stable_sort(exps.begin(), exps.end(), [](const auto& a, const auto& b) {
      return std::accumulate(a.begin(), a.end(), 0u) < std::accumulate(b.begin(), b.end(), 0u);
    });
    for (std::size_t i = 0; i < exps.size(); ++i) {
      index[exps[i]] = i;
      degree.push_back(std::accumulate(exps[i].begin(), exps[i].end(), 0u));
    }
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (std::size_t j = 0; j < exps.size(); ++j) {
        if (degree[i] + degree[j] > order) continue;
        std::vector<unsigned> s(n);
        for (std::size_t v = 0; v < n; ++v) s[v] = exps[i][v] + exps[j][v];
        products.push_back({i, j, index.at(s), degree[i] + degree[j]});
      }
    std::stable_sort(products.begin(), products.end(),
                     [](const Triple& a, const Triple& b) { return a.deg < b.deg; });
    derivative.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < exps.size(); ++i) {
        std::vector<unsigned> up = exps[i];
        ++up[v];
        auto it = index.find(up);
        derivative[v].emplace_back(it == index.end() ? SIZE_MAX : it->second, up[v]);
      }
  }

  void enumerate(std::vector<unsigned>& e, std::size_t v, unsigned left) {
    if (v == n) {
      exps.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      enumerate(e, v + 1, left - k);
    }
    e[v] = 0;
  }
};

struct SeriesAccess {
  static Series make(const Series::Space* sp, unsigned valid) {
    Series s;
    s.sp_ = sp;
    s.c_.assign(sp->exps.size(), 0);
    s.valid_ = valid;
    return s;
  }
  static std::vector<mpq_class>& coefs(Series& s) { return s.c_; }
  static const Series::Space* space(const Series& a, const Series& b) { return a.sp_ ? a.sp_ : b.sp_; }
};

Series::Series(const Space* space, const mpq_class& constant) : sp_(space), c_(space->exps.size(), 0) {
  c_[0] = constant;
  valid_ = space->order;
}

Series Series::variable(const Space* space, std::size_t i, const mpq_class& at) {
  Series s(space, at);
  std::vector<unsigned> e(space->n, 0);
  e[i] = 1;
  s.c_[space->index.at(e)] = 1;
  return s;
}

bool Series::is_zero() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sp_->degree[i] <= valid_ && c_[i] != 0) return false;
  return true;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

namespace {
Series combine(Series a, const Series& b, int sign) {
  const Series::Space* sp = SeriesAccess::space(a, b);
  Series out = SeriesAccess::make(sp, std::min(a.valid(), b.valid()));
  auto& o = SeriesAccess::coefs(out);
  const auto& ca = SeriesAccess::coefs(a);
  const auto& cb = SeriesAccess::coefs(const_cast<Series&>(b));
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (sp->degree[i] > out.valid()) break;
    if (sign > 0)
      o[i] = ca[i] + cb[i];
    else
      o[i] = ca[i] - cb[i];
  }
  return out;
}
}  // namespace

Series operator+(const Series& a, const Series& b) { return combine(a, b, 1); }
Series operator-(const Series& a, const Series& b) { return combine(a, b, -1); }

Series operator*(const Series& a, const Series& b) {
  const Series::Space* sp = SeriesAccess::space(a, b);
  unsigned valid = std::min(a.valid_, b.valid_);
  Series out = SeriesAccess::make(sp, valid);
  for (const auto& t : sp->products) {
    if (t.deg > valid) break;
    if (a.c_[t.i] == 0 || b.c_[t.j] == 0) continue;
    out.c_[t.k] += a.c_[t.i] * b.c_[t.j];
  }
  return out;
}

Series Series::scaled(const mpq_class& k) const {
  Series out = *this;
  for (auto& x : out.c_) x *= k;
  return out;
}

Series Series::inverse() const {
  if (c_[0] == 0) throw ZeroDenominator("series has no inverse at this point");
  mpq_class inv0 = 1 / c_[0];
  Series h = *this;
  h.c_[0] = 0;
  h = h.scaled(-inv0);  // 1/a = inv0 * Σ h^m
  Series sum(sp_, 1), power(sp_, 1);
  sum.valid_ = power.valid_ = valid_;
  for (unsigned m = 1; m <= valid_; ++m) {
    power = power * h;
    sum += power;
  }
  return sum.scaled(inv0);
}

Series Series::derivative(std::size_t var) const {
  if (valid_ == 0) throw ExprError("series order exhausted");
  Series out = SeriesAccess::make(sp_, valid_ - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sp_->degree[i] > out.valid_) break;
    auto [src, mult] = sp_->derivative[var][i];
    if (src != SIZE_MAX) out.c_[i] = c_[src] * mult;
  }
  return out;
}

// ---------------------------------------------------------------- sample points

namespace {
mpq_class factorial(unsigned k) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return mpq_class(f);
}

void multi_indices(std::size_t n, unsigned left, std::vector<unsigned>& cur, std::size_t v,
                   std::vector<std::vector<unsigned>>& out) {
  if (v == n) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= left; ++k) {
    cur[v] = k;
    multi_indices(n, left - k, cur, v + 1, out);
  }
  cur[v] = 0;
}
}  // namespace

SamplePoint::SamplePoint(ContextPtr ctx, unsigned order, Sampler& sampler)
    : ctx_(std::move(ctx)), order_(order), space_(std::make_unique<Series::Space>(ctx_->dimension(), order)) {
  for (std::size_t i = 0; i < ctx_->dimension(); ++i) coords_.push_back(sampler.draw());
  for (const auto& p : ctx_->parameters()) values_[parameter_atom(p)] = sampler.draw();
  for (const auto& [fname, args] : ctx_->functions()) {
    std::vector<std::vector<unsigned>> idx;
    std::vector<unsigned> cur(args.size(), 0);
    multi_indices(args.size(), order, cur, 0, idx);
    for (const auto& a : idx) germs_[fname][a] = sampler.draw();
  }
  rebuild_jets();
}

SamplePoint::~SamplePoint() = default;
SamplePoint::SamplePoint(SamplePoint&&) noexcept = default;

void SamplePoint::rebuild_jets() {
  for (std::size_t i = 0; i < ctx_->dimension(); ++i) {
    values_[ctx_->coordinate(i)] = coords_[i];
    atom_series_[ctx_->coordinate(i)] = Series::variable(space_.get(), i, coords_[i]);
  }
  for (const auto& p : ctx_->parameters()) {
    AtomId a = parameter_atom(p);
    atom_series_[a] = Series(space_.get(), values_.at(a));
  }
  for (const auto& [fname, args] : ctx_->functions()) {
    std::vector<std::size_t> pos;
    for (const auto& a : args) pos.push_back(*ctx_->coordinate_index(a));
    const auto& germ = germs_.at(fname);
    for (const auto& [beta, unused] : germ) {
      std::vector<std::uint16_t> orders(beta.begin(), beta.end());
      AtomId jet = jet_atom(fname, args, orders);
      unsigned total = std::accumulate(beta.begin(), beta.end(), 0u);
      Series s(space_.get(), 0);
      auto& c = SeriesAccess::coefs(s);
      mpq_class value = germ.at(beta);
      for (unsigned k : beta) value *= factorial(k);
      values_[jet] = value;
      for (const auto& [alpha, coef] : germ) {
        bool ok = true;
        for (std::size_t k = 0; k < beta.size(); ++k) ok = ok && alpha[k] >= beta[k];
        if (!ok) continue;
        std::vector<unsigned> e(ctx_->dimension(), 0);
        mpq_class m = coef;
        for (std::size_t k = 0; k < beta.size(); ++k) {
          e[pos[k]] += alpha[k] - beta[k];
          m *= factorial(alpha[k]) / factorial(alpha[k] - beta[k]);
        }
        c[space_->index.at(e)] = m;
      }
      Series trimmed = SeriesAccess::make(space_.get(), order_ - total);
      auto& t = SeriesAccess::coefs(trimmed);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (space_->degree[i] <= order_ - total) t[i] = c[i];
      atom_series_[jet] = trimmed;
    }
  }
}

void SamplePoint::set(AtomId atom, const mpq_class& value) {
  const AtomInfo& info = atom_info(atom);
  if (info.kind == AtomKind::parameter) {
    values_[atom] = value;
  } else if (info.kind == AtomKind::jet) {
    auto it = germs_.find(info.name);
    if (it == germs_.end()) throw ExprError("unknown function " + info.name);
    std::vector<unsigned> beta(info.orders.begin(), info.orders.end());
    auto g = it->second.find(beta);
    if (g == it->second.end()) throw ExprError("jet beyond the sample order: " + atom_name(atom));
    mpq_class v = value;
    for (unsigned k : beta) v /= factorial(k);
    g->second = v;
  } else {
    throw ExprError("cannot pin a coordinate");
  }
  rebuild_jets();
}

bool SamplePoint::impose(const Condition& c) {
  Expr d = c.lhs - c.rhs;
  if (d.is_zero()) return true;
  Assignment at = values_;
  at[c.eliminate] = 0;
  mpq_class b = eval_numeric(d.num(), at);
  at[c.eliminate] = 1;
  mpq_class a = eval_numeric(d.num(), at) - b;
  if (a == 0) return b == 0;
  set(c.eliminate, -b / a);
  try {
    return eval(d) == 0;
  } catch (const ExprError&) {
    return false;
  }
}

bool SamplePoint::impose_all(const std::vector<Condition>& conditions) {
  std::vector<Condition> chained = chain_conditions(conditions);
  for (auto it = chained.rbegin(); it != chained.rend(); ++it)
    if (!impose(*it)) return false;
  try {
    for (const Condition& c : conditions)
      if (eval(c.lhs) != eval(c.rhs)) return false;
  } catch (const ExprError&) {
    return false;
  }
  return true;
}

Series SamplePoint::series(const Expr& e) const {
  auto poly = [&](const Poly& p) {
    Series sum(space_.get(), 0);
    for (const auto& t : p.terms()) {
      Series term(space_.get(), mpq_class(t.coef));
      for (auto packed : t.mono) {
        auto it = atom_series_.find(mono_atom(packed));
        if (it == atom_series_.end()) throw UnassignedAtom("no series for " + atom_name(mono_atom(packed)));
        for (unsigned k = 0; k < mono_exp(packed); ++k) term = term * it->second;
      }
      sum += term;
    }
    return sum;
  };
  Series num = poly(e.num());
  if (e.den().is_one()) return num;
  return num * poly(e.den()).inverse();
}

// ---------------------------------------------------------------- numeric geometry

std::vector<mpq_class> STensor::values() const {
  std::vector<mpq_class> out;
  out.reserve(c.size());
  for (const auto& s : c) out.push_back(s.constant());
  return out;
}

namespace {

STensor blank(std::size_t n, unsigned rank, const Series& zero) {
  std::size_t size = 1;
  for (unsigned k = 0; k < rank; ++k) size *= n;
  return STensor{rank, n, std::vector<Series>(size, zero)};
}

std::size_t at4(std::size_t n, std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
  return ((p * n + q) * n + r) * n + s;
}

}  // namespace

NumericGeometry::NumericGeometry(const Metric& g, const SamplePoint& pt) : pt_(pt), n_(g.dim()) {
  const std::size_t n = n_;
  g_ = tensor(g.tensor());
  Series zero = pt.series(Expr(0));

  // Gauss-Jordan inverse with pivots chosen by nonzero constant term.
  std::vector<std::vector<Series>> a(n, std::vector<Series>(2 * n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g_.c[i * n + j];
    a[i][n + i] = pt.series(Expr(1));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].constant() == 0) ++piv;
    if (piv == n) throw ZeroDenominator("metric is degenerate at the sample point");
    std::swap(a[piv], a[col]);
    Series inv = a[col][col].inverse();
    for (auto& x : a[col]) x = x * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Series factor = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  ginv_ = blank(n, 2, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ginv_.c[i * n + j] = a[i][n + j];

  auto dg = [&](std::size_t m, std::size_t i, std::size_t j) { return g_.c[i * n + j].derivative(m); };
  std::vector<Series> lower(n * n * n, zero);  // Γ_{l,ij}
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        lower[(l * n + i) * n + j] = (dg(i, l, j) + dg(j, l, i) - dg(l, i, j)).scaled(mpq_class(1, 2));
  gamma_ = blank(n, 3, zero);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Series s = zero;
        for (std::size_t l = 0; l < n; ++l) s += ginv_.c[k * n + l] * lower[(l * n + i) * n + j];
        gamma_.c[(k * n + i) * n + j] = s;
      }

  // R_pqrs = ½(g_ps,qr + g_qr,ps - g_pr,qs - g_qs,pr) + Γ_{ν,qr} Γ^ν_ps - Γ_{ν,qs} Γ^ν_pr
  auto ddg = [&](std::size_t i, std::size_t j, std::size_t a1, std::size_t a2) {
    return g_.c[i * n + j].derivative(a1).derivative(a2);
  };
  riemann_ = blank(n, 4, zero);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          Series v = (ddg(p, s, q, r) + ddg(q, r, p, s) - ddg(p, r, q, s) - ddg(q, s, p, r)).scaled(mpq_class(1, 2));
          for (std::size_t nu = 0; nu < n; ++nu)
            v += lower[(nu * n + q) * n + r] * gamma_.c[(nu * n + p) * n + s] -
                 lower[(nu * n + q) * n + s] * gamma_.c[(nu * n + p) * n + r];
          riemann_.c[at4(n, p, q, r, s)] = v;
        }
  ricci_ = blank(n, 2, zero);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < n; ++r) {
      Series v = zero;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t s = 0; s < n; ++s) v += ginv_.c[p * n + s] * riemann_.c[at4(n, p, q, r, s)];
      ricci_.c[q * n + r] = v;
    }
  kappa_ = zero;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < n; ++r) kappa_ += ginv_.c[q * n + r] * ricci_.c[q * n + r];
}

STensor NumericGeometry::tensor(const Tensor& t) const {
  STensor out{t.rank(), t.dim(), {}};
  for (const auto& e : t.components()) out.c.push_back(pt_.series(e));
  return out;
}

STensor NumericGeometry::kulkarni_nomizu(const STensor& a, const STensor& b) const {
  const std::size_t n = n_;
  STensor out = blank(n, 4, pt_.series(Expr(0)));
  auto A = [&](std::size_t i, std::size_t j) { return a.c[i * n + j]; };
  auto B = [&](std::size_t i, std::size_t j) { return b.c[i * n + j]; };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          out.c[at4(n, p, q, r, s)] =
              A(p, s) * B(q, r) - A(p, r) * B(q, s) + A(q, r) * B(p, s) - A(q, s) * B(p, r);
  return out;
}

namespace {
STensor axpy(const STensor& x, const Series& k, const STensor& y) {  // x + k y
  STensor out = x;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += k * y.c[i];
  return out;
}
mpq_class nk(std::size_t n, unsigned k) { return mpq_class(1, static_cast<unsigned long>(1 + n - k)); }
}  // namespace

STensor NumericGeometry::conformal() const {
  STensor G = kulkarni_nomizu(g_, g_);  // = 2G
  STensor out = axpy(riemann_, pt_.series(Expr(mpq_class(-nk(n_, 3)))), kulkarni_nomizu(ricci_, g_));
  return axpy(out, kappa_.scaled(nk(n_, 2) * nk(n_, 3) / 2), G);
}

STensor NumericGeometry::concircular() const {
  return axpy(riemann_, kappa_.scaled(-nk(n_, 1) * nk(n_, 2) / 2), kulkarni_nomizu(g_, g_));
}

STensor NumericGeometry::conharmonic() const {
  return axpy(riemann_, pt_.series(Expr(mpq_class(-nk(n_, 3)))), kulkarni_nomizu(ricci_, g_));
}

STensor NumericGeometry::projective() const {
  const std::size_t n = n_;
  STensor out = riemann_;
  mpq_class k = nk(n, 2);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          out.c[at4(n, p, q, r, s)] -=
              (g_.c[s * n + p] * ricci_.c[q * n + r] - g_.c[s * n + q] * ricci_.c[p * n + r]).scaled(k);
  return out;
}

STensor NumericGeometry::outer_square(const std::vector<Expr>& eta) const {
  std::vector<Series> e = field(eta);
  STensor out = blank(n_, 2, pt_.series(Expr(0)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out.c[i * n_ + j] = e[i] * e[j];
  return out;
}

std::vector<Series> NumericGeometry::field(const std::vector<Expr>& xi) const {
  std::vector<Series> out;
  for (const auto& e : xi) out.push_back(pt_.series(e));
  return out;
}

std::vector<Series> NumericGeometry::gradient(const Expr& zeta) const {
  Series z = pt_.series(zeta);
  std::vector<Series> out(n_, pt_.series(Expr(0)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += ginv_.c[i * n_ + j] * z.derivative(j);
  return out;
}

STensor NumericGeometry::hessian(const Expr& zeta) const {
  Series z = pt_.series(zeta);
  STensor out = blank(n_, 2, pt_.series(Expr(0)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Series v = z.derivative(i).derivative(j);
      for (std::size_t k = 0; k < n_; ++k) v -= gamma_.c[(k * n_ + i) * n_ + j] * z.derivative(k);
      out.c[i * n_ + j] = v;
    }
  return out;
}

STensor NumericGeometry::covariant_derivative(const STensor& t) const {
  const std::size_t n = n_, size = t.c.size();
  STensor out = blank(n, t.rank + 1, pt_.series(Expr(0)));
  std::vector<std::size_t> stride(t.rank, 1);
  for (unsigned k = t.rank; k-- > 1;) stride[k - 1] = stride[k] * n;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t off = 0; off < size; ++off) {
      Series v = t.c[off].derivative(m);
      for (unsigned slot = 0; slot < t.rank; ++slot) {
        std::size_t i = off / stride[slot] % n;
        std::size_t base = off - i * stride[slot];
        for (std::size_t l = 0; l < n; ++l) v -= gamma_.c[(l * n + m) * n + i] * t.c[base + l * stride[slot]];
      }
      out.c[m * size + off] = v;
    }
  return out;
}

STensor NumericGeometry::lie(const std::vector<Series>& xi, const STensor& t) const {
  const std::size_t n = n_, size = t.c.size();
  STensor dt = covariant_derivative(t);
  std::vector<Series> dxi(n * n, pt_.series(Expr(0)));  // ∇_i ξ^m at [i][m]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      Series v = xi[m].derivative(i);
      for (std::size_t l = 0; l < n; ++l) v += gamma_.c[(m * n + i) * n + l] * xi[l];
      dxi[i * n + m] = v;
    }
  std::vector<std::size_t> stride(t.rank, 1);
  for (unsigned k = t.rank; k-- > 1;) stride[k - 1] = stride[k] * n;
  STensor out = blank(n, t.rank, pt_.series(Expr(0)));
  for (std::size_t off = 0; off < size; ++off) {
    Series v = pt_.series(Expr(0));
    for (std::size_t m = 0; m < n; ++m) v += xi[m] * dt.c[m * size + off];
    for (unsigned slot = 0; slot < t.rank; ++slot) {
      std::size_t i = off / stride[slot] % n;
      std::size_t base = off - i * stride[slot];
      for (std::size_t m = 0; m < n; ++m) v += t.c[base + m * stride[slot]] * dxi[i * n + m];
    }
    out.c[off] = v;
  }
  return out;
}

std::optional<std::vector<mpq_class>> solve_at_point(const std::vector<mpq_class>& target,
                                                     const std::vector<std::vector<mpq_class>>& basis) {
  const std::size_t k = basis.size(), m = target.size();
  std::vector<std::pair<std::size_t, std::vector<mpq_class>>> pivots;
  for (std::size_t off = 0; off < m; ++off) {
    std::vector<mpq_class> row(k + 1);
    for (std::size_t i = 0; i < k; ++i) row[i] = basis[i][off];
    row[k] = target[off];
    for (const auto& [col, prow] : pivots) {
      mpq_class f = row[col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= k; ++j) row[j] -= f * prow[j];
    }
    std::size_t col = 0;
    while (col < k && row[col] == 0) ++col;
    if (col == k) {
      if (row[k] != 0) return std::nullopt;
      continue;
    }
    mpq_class inv = 1 / row[col];
    for (auto& x : row) x *= inv;
    for (auto& [pc, prow] : pivots) {
      mpq_class f = prow[col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= k; ++j) prow[j] -= f * row[j];
    }
    pivots.emplace_back(col, std::move(row));
  }
  std::vector<mpq_class> out(k, 0);
  for (const auto& [col, prow] : pivots) out[col] = prow[k];
  return out;
}

}  // namespace rtcalc::oracle
