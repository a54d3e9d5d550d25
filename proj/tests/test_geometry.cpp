#include <doctest.h>

#include <random>

#include "rtcalc/geometry.hpp"
#include "rtcalc/parse.hpp"
#include "rtcalc/rt.hpp"

using namespace rtcalc;

namespace {

Expr rt(std::string_view s) { return parse(s, *rt_context()); }

Metric minkowski() {
  auto ctx = std::make_shared<const Context>(std::vector<std::string>{"t", "x", "y", "z"},
                                             std::vector<std::string>{}, std::vector<Context::FunctionDecl>{});
  std::vector<Expr> g(16);
  g[0] = Expr(-1);
  g[5] = g[10] = g[15] = Expr(1);
  return Metric(ctx, g);
}

// Small random polynomial metric on a 3D chart with one opaque function.
Metric random_metric(std::mt19937& rng) {
  static const auto ctx = std::make_shared<const Context>(
      std::vector<std::string>{"u", "v", "w"}, std::vector<std::string>{"k"},
      std::vector<Context::FunctionDecl>{{"h", {"u", "v"}}});
  static const char* pieces[] = {"u", "v", "w", "k", "h", "u*v", "w^2", "h_u", "k*w"};
  std::uniform_int_distribution<int> pick(0, 8), coef(-2, 2);
  auto poly = [&](int base) {
    Expr e(base);
    for (int i = 0; i < 2; ++i) e += Expr(coef(rng)) * parse(pieces[pick(rng)], *ctx);
    return e;
  };
  while (true) {
    std::vector<Expr> g(9);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) g[i * 3 + j] = g[j * 3 + i] = poly(i == j ? 1 + static_cast<int>(i) : 0);
    try {
      return Metric(ctx, g);
    } catch (const GeometryError&) {
    }
  }
}

void check_riemann_symmetries(const Geometry& geo) {
  const Tensor& R = geo.riemann();
  std::size_t n = geo.dim();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          CHECK(R(p, q, r, s) == -R(q, p, r, s));
          CHECK(R(p, q, r, s) == -R(p, q, s, r));
          CHECK(R(p, q, r, s) == R(r, s, p, q));
          CHECK((R(p, q, r, s) + R(p, r, s, q) + R(p, s, q, r)).is_zero());
        }
}

}  // namespace

TEST_CASE("inverse metric") {
  Metric m = minkowski();
  CHECK(inverse_metric(m) == m.tensor().components());

  const Geometry& geo = rt_geometry();
  CHECK(geo.inverse(0, 0).is_zero());
  CHECK(geo.inverse(0, 1) == Expr(1));
  CHECK(geo.inverse(1, 1) == rt("2*(a - 2*b*r - d/r)"));
  CHECK(geo.inverse(2, 2) == rt("-f^2/r^2"));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Expr s;
      for (std::size_t k = 0; k < 4; ++k) s += geo.inverse(i, k) * rt_metric()(k, j);
      CHECK(s == Expr(i == j ? 1 : 0));
    }
}

TEST_CASE("Christoffel symbols") {
  Geometry flat(minkowski());
  for (const auto& c : flat.christoffel().c) CHECK(c.is_zero());

  auto ctx = std::make_shared<const Context>(std::vector<std::string>{"u", "v"}, std::vector<std::string>{},
                                             std::vector<Context::FunctionDecl>{});
  Expr u = parse("u", *ctx);
  Metric polar(ctx, {Expr(1), Expr(), Expr(), u * u});
  Christoffel G = christoffel(polar);
  CHECK(G(0, 1, 1) == -u);
  CHECK(G(1, 0, 1) == Expr(1) / u);
  CHECK(G(1, 1, 0) == Expr(1) / u);
  CHECK(G(0, 0, 0).is_zero());
}

TEST_CASE("metric compatibility") {
  const Geometry& geo = rt_geometry();
  CHECK(covariant_derivative(rt_metric().tensor(), geo.christoffel()).is_zero());
  std::mt19937 rng(17);
  for (int i = 0; i < 3; ++i) {
    Geometry g(random_metric(rng));
    CHECK(covariant_derivative(g.metric().tensor(), g.christoffel()).is_zero());
  }
}

TEST_CASE("RT curvature values") {
  const Geometry& geo = rt_geometry();
  CHECK(geo.riemann()(0, 1, 0, 1) == rt("-2*d/r^3"));
  CHECK(geo.riemann()(2, 3, 2, 3) ==
        rt("r*(2*(d + r*(-a + 2*b*r)) + r*(f_x^2 + f_y^2 - f*(f_xx + f_yy)))/f^4"));
  CHECK(geo.ricci()(0, 1) == rt("-4*b/r"));
  CHECK(geo.scalar() == rt("-(2/r^2)*(f_x^2 + f_y^2 - f*(f_xx + f_yy) - 2*a + 12*b*r)"));
  Tensor E = geo.einstein();
  CHECK(E(0, 1) == geo.ricci()(0, 1) - geo.scalar() / Expr(2));
}

TEST_CASE("flat space has no curvature") {
  Geometry flat(minkowski());
  CHECK(flat.riemann().is_zero());
  CHECK(flat.ricci().is_zero());
  CHECK(flat.scalar().is_zero());
}

TEST_CASE("Riemann symmetries and Bianchi identities") {
  check_riemann_symmetries(rt_geometry());
  std::mt19937 rng(29);
  for (int i = 0; i < 2; ++i) check_riemann_symmetries(Geometry(random_metric(rng)));

  const Geometry& geo = rt_geometry();
  Tensor dR = covariant_derivative(geo.riemann(), geo.christoffel());
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t s = 0; s < 4; ++s) {
            auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
              return dR[(((a * 4 + b) * 4 + c) * 4 + r) * 4 + s];
            };
            CHECK((at(t, p, q) + at(p, q, t) + at(q, t, p)).is_zero());
          }
}

TEST_CASE("gradient and hessian") {
  const Geometry& geo = rt_geometry();
  VectorField v = gradient(geo, {rt("r^2")});
  CHECK(v.xi[0] == rt("2*r"));
  CHECK(v.xi[1] == rt("-4*(d + r*(-a + 2*b*r))"));
  CHECK(v.xi[2].is_zero());
  CHECK(v.xi[3].is_zero());

  VectorField c = gradient(geo, {Expr(7)});
  for (const auto& e : c.xi) CHECK(e.is_zero());
  CHECK(hessian(geo, {Expr(7)}).is_zero());

  Metric m = minkowski();
  Tensor h = hessian(m, {parse("x^2", m.ctx())});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(h(i, j) == Expr(i == 1 && j == 1 ? 2 : 0));
  Tensor hr = hessian(geo, {rt("x*y")});
  CHECK(hr(2, 3) == hr(3, 2));
}

TEST_CASE("degenerate and asymmetric metrics are rejected") {
  auto ctx = std::make_shared<const Context>(std::vector<std::string>{"u", "v"}, std::vector<std::string>{},
                                             std::vector<Context::FunctionDecl>{});
  Expr u = parse("u", *ctx);
  CHECK_THROWS_AS(Metric(ctx, {u, u, u, u}), GeometryError);
  CHECK_THROWS_AS(Metric(ctx, {Expr(1), u, Expr(), Expr(1)}), GeometryError);
}
