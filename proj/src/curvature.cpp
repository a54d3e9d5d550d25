#include "rtcalc/curvature.hpp"

namespace rtcalc {

DimensionConstants DimensionConstants::of(std::size_t n) {
  auto nk = [n](long k) { return Expr(mpq_class(1, 1 + static_cast<long>(n) - k)); };
  return {n, nk(1), nk(2), nk(3)};
}

Tensor kulkarni_nomizu(const Tensor& phi, const Tensor& psi) {
  require_same_shape(phi, psi);
  if (phi.rank() != 2) throw GeometryError("Kulkarni-Nomizu product needs (0,2) tensors");
  std::size_t n = phi.dim();
  Tensor out(phi.context(), 4, phi.name() + "∧" + psi.name());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          out(p, q, r, s) = phi(p, s) * psi(q, r) - phi(p, r) * psi(q, s) + phi(q, r) * psi(p, s) -
                            phi(q, s) * psi(p, r);
  return out;
}

Tensor gaussian(const Geometry& geo) {
  const Tensor& g = geo.metric().tensor();
  std::size_t n = geo.dim();
  Tensor out(geo.context(), 4, "G");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) out(p, q, r, s) = g(p, s) * g(q, r) - g(p, r) * g(q, s);
  return out;
}

Tensor conharmonic(const Geometry& geo) {
  auto c = DimensionConstants::of(geo.dim());
  Tensor out = geo.riemann() - kulkarni_nomizu(geo.ricci(), geo.metric().tensor()).scaled(c.n3);
  out.set_name("K");
  return out;
}

Tensor concircular(const Geometry& geo) {
  auto c = DimensionConstants::of(geo.dim());
  Tensor out = geo.riemann() - gaussian(geo).scaled(geo.scalar() * c.n1 * c.n2);
  out.set_name("W");
  return out;
}

Tensor weyl_conformal(const Geometry& geo) {
  auto c = DimensionConstants::of(geo.dim());
  Tensor out = geo.riemann() - kulkarni_nomizu(geo.ricci(), geo.metric().tensor()).scaled(c.n3) +
               gaussian(geo).scaled(geo.scalar() * c.n2 * c.n3);
  out.set_name("C");
  return out;
}

Tensor weyl_projective(const Geometry& geo) {
  auto c = DimensionConstants::of(geo.dim());
  const Tensor& g = geo.metric().tensor();
  const Tensor& S = geo.ricci();
  std::size_t n = geo.dim();
  Tensor out(geo.context(), 4, "P");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          out(p, q, r, s) = geo.riemann()(p, q, r, s) - c.n2 * (g(s, p) * S(q, r) - g(s, q) * S(p, r));
  return out;
}

SymmetryReport classify_gct(const Tensor& t, const Geometry& geo) {
  if (t.rank() != 4) throw GeometryError("classify_gct needs a (0,4) tensor");
  SymmetryReport rep;
  std::size_t n = t.dim();
  auto note = [](bool& flag, std::optional<std::vector<std::size_t>>& w, std::vector<std::size_t> idx) {
    if (flag) {
      flag = false;
      w = std::move(idx);
    }
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const Expr& v = t(p, q, r, s);
          if (!(v + t(q, p, r, s)).is_zero()) note(rep.antisym_first_pair, rep.antisym_first_pair_witness, {p, q, r, s});
          if (!(v + t(p, q, s, r)).is_zero())
            note(rep.antisym_second_pair, rep.antisym_second_pair_witness, {p, q, r, s});
          if (v != t(r, s, p, q)) note(rep.pair_exchange, rep.pair_exchange_witness, {p, q, r, s});
          if (!(v + t(p, r, s, q) + t(p, s, q, r)).is_zero())
            note(rep.first_bianchi, rep.first_bianchi_witness, {p, q, r, s});
        }
  Tensor d = covariant_derivative(t, geo.christoffel());
  auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t r, std::size_t s) -> const Expr& {
    return d[(((a * n + b) * n + c) * n + r) * n + s];
  };
  for (std::size_t u = 0; u < n && rep.second_bianchi; ++u)
    for (std::size_t p = 0; p < n && rep.second_bianchi; ++p)
      for (std::size_t q = 0; q < n && rep.second_bianchi; ++q)
        for (std::size_t r = 0; r < n && rep.second_bianchi; ++r)
          for (std::size_t s = 0; s < n && rep.second_bianchi; ++s)
            if (!(at(u, p, q, r, s) + at(p, q, u, r, s) + at(q, u, p, r, s)).is_zero())
              note(rep.second_bianchi, rep.second_bianchi_witness, {u, p, q, r, s});
  return rep;
}

}  // namespace rtcalc
