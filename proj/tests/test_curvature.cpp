#include <doctest.h>

#include "rtcalc/curvature.hpp"
#include "support.hpp"

using namespace rtcalc;
using testing_support::P;

namespace {

const char* kF1 = "(f_x^2 + f_y^2 - f*(f_xx + f_yy))";

Expr with_f1(std::string s) {
  for (std::size_t at = s.find("F1"); at != std::string::npos; at = s.find("F1")) s.replace(at, 2, kF1);
  return P(s);
}

Geometry minkowski() {
  auto ctx = std::make_shared<const Context>(std::vector<std::string>{"t", "x", "y", "z"},
                                             std::vector<std::string>{}, std::vector<Context::FunctionDecl>{});
  std::vector<Expr> g(16);
  g[0] = Expr(-1);
  g[5] = g[10] = g[15] = Expr(1);
  return Geometry(Metric(ctx, g));
}

}  // namespace

TEST_CASE("dimension constants") {
  auto c = DimensionConstants::of(4);
  CHECK(c.n1 == P("1/4"));
  CHECK(c.n2 == P("1/3"));
  CHECK(c.n3 == P("1/2"));
}

TEST_CASE("Kulkarni-Nomizu products on RT") {
  const Geometry& geo = rt_geometry();
  const Tensor& g = geo.metric().tensor();
  const Tensor& S = geo.ricci();
  CHECK(kulkarni_nomizu(g, g)(0, 1, 0, 1) == Expr(2));
  CHECK(kulkarni_nomizu(g, S)(0, 1, 0, 1) == P("-8*b/r"));
  CHECK(kulkarni_nomizu(S, S)(0, 1, 0, 1) == P("32*b^2/r^2"));
  CHECK(kulkarni_nomizu(Tensor(rt_context(), 2), S).is_zero());
}

TEST_CASE("Kulkarni-Nomizu product is symmetric and bilinear") {
  std::mt19937 rng(41);
  for (int i = 0; i < 10; ++i) {
    Tensor a = testing_support::random_symmetric(rng), b = testing_support::random_symmetric(rng),
           c = testing_support::random_symmetric(rng);
    CHECK(kulkarni_nomizu(a, b) == kulkarni_nomizu(b, a));
    CHECK(kulkarni_nomizu(a + c, b) == kulkarni_nomizu(a, b) + kulkarni_nomizu(c, b));
    CHECK(kulkarni_nomizu(a.scaled(P("r")), b) == kulkarni_nomizu(a, b).scaled(P("r")));
  }
}

TEST_CASE("derived curvature tensors on RT") {
  const Geometry& geo = rt_geometry();
  CHECK(weyl_conformal(geo)(0, 1, 0, 1) == with_f1("-(6*d - 2*a*r + r*F1)/(3*r^3)"));
  CHECK(conharmonic(geo)(0, 1, 0, 1) == P("-2*(d - 2*b*r^2)/r^3"));
  CHECK(concircular(geo)(0, 1, 0, 1) == with_f1("(-12*d + r*(-2*a + 12*b*r + F1))/(6*r^3)"));
  CHECK(weyl_projective(geo)(0, 1, 0, 1) == P("-2*d/r^3 + 4*b/(3*r)"));
  CHECK(weyl_projective(geo)(0, 2, 1, 2) == P("(3*d - 2*b*r^2)/(3*r*f^2)"));
}

TEST_CASE("flat space: all derived tensors vanish") {
  Geometry flat = minkowski();
  CHECK(weyl_conformal(flat).is_zero());
  CHECK(concircular(flat).is_zero());
  CHECK(conharmonic(flat).is_zero());
  CHECK(weyl_projective(flat).is_zero());
}

TEST_CASE("tensor identities between the derived tensors") {
  const Geometry& geo = rt_geometry();
  auto c = DimensionConstants::of(4);
  Tensor G = gaussian(geo);
  const Tensor& g = geo.metric().tensor();
  CHECK(G == kulkarni_nomizu(g, g).scaled(P("1/2")));
  CHECK(weyl_conformal(geo) == conharmonic(geo) + G.scaled(geo.scalar() * c.n2 * c.n3));
  CHECK(concircular(geo) == geo.riemann() - G.scaled(geo.scalar() * c.n1 * c.n2));

  Tensor C = weyl_conformal(geo);
  for (std::size_t q = 0; q < 4; ++q)
    for (std::size_t r = 0; r < 4; ++r) {
      Expr tr;
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t s = 0; s < 4; ++s) tr += geo.inverse(p, s) * C(p, q, r, s);
      CHECK(tr.is_zero());
    }
}

TEST_CASE("generalized curvature tensor classification") {
  const Geometry& geo = rt_geometry();
  SymmetryReport r = classify_gct(geo.riemann(), geo);
  CHECK(r.proper());
  CHECK_FALSE(r.second_bianchi_witness.has_value());

  for (const Tensor& t : {weyl_conformal(geo), concircular(geo), conharmonic(geo)}) {
    SymmetryReport rep = classify_gct(t, geo);
    CHECK(rep.generalized_curvature_tensor());
    CHECK_FALSE(rep.second_bianchi);
    REQUIRE(rep.second_bianchi_witness.has_value());
    CHECK(rep.second_bianchi_witness->size() == 5);
  }

  SymmetryReport p = classify_gct(weyl_projective(geo), geo);
  CHECK_FALSE(p.pair_exchange);
  CHECK(p.pair_exchange_witness.has_value());
  CHECK_FALSE(p.generalized_curvature_tensor());
}
