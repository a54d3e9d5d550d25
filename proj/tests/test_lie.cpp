#include <doctest.h>

#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"
#include "support.hpp"

using namespace rtcalc;
using testing_support::P;

namespace {

VectorField field(std::initializer_list<const char*> comps) {
  VectorField v{rt_context(), {}};
  for (const char* c : comps) v.xi.push_back(P(c));
  return v;
}

}  // namespace

TEST_CASE("Killing field and simple Lie derivatives of the metric") {
  const Tensor& g = rt_metric().tensor();
  CHECK(lie_02(coordinate_field(rt_context(), 0), g).is_zero());

  Tensor lr = lie_02(coordinate_field(rt_context(), 1), g);
  CHECK(lr(0, 0) == P("4*b - 2*d/r^2"));
  CHECK(lr(2, 2) == P("-2*r/f^2"));
  CHECK(lr(0, 1).is_zero());

  CHECK(lie_02(field({"0", "0", "0", "0"}), g).is_zero());
  CHECK(lie_04(field({"0", "0", "0", "0"}), weyl_conformal(rt_geometry())).is_zero());
}

TEST_CASE("Lie derivative of the Riemann tensor along x") {
  Tensor lR = lie_04(coordinate_field(rt_context(), 2), rt_geometry().riemann());
  CHECK(lR(0, 1, 0, 1).is_zero());
  CHECK(lR(0, 2, 1, 2) == P("-2*(d - 2*b*r^2)*f_x/(r*f^3)"));
}

TEST_CASE("gradient fields: half the Lie derivative of g is the Hessian") {
  const Geometry& geo = rt_geometry();
  for (const char* z : {"r^2", "r", "x*y"}) {
    ScalarField zeta{P(z)};
    CHECK(lie_02(gradient(geo, zeta), geo.metric().tensor()).scaled(P("1/2")) == hessian(geo, zeta));
  }
}

TEST_CASE("partial and covariant assemblies agree") {
  const Geometry& geo = rt_geometry();
  for (auto v : {field({"0", "0", "1", "0"}), field({"0", "1", "0", "0"}), field({"r", "x", "0", "f"}),
                 field({"μ1", "0", "x*y", "r^2"})}) {
    CHECK(lie(v, geo.metric().tensor()) == lie_covariant(v, geo.metric().tensor(), geo.christoffel()));
    CHECK(lie(v, geo.ricci()) == lie_covariant(v, geo.ricci(), geo.christoffel()));
    CHECK(lie(v, geo.riemann()) == lie_covariant(v, geo.riemann(), geo.christoffel()));
  }
}

TEST_CASE("linearity and the Leibniz rule over Kulkarni-Nomizu products") {
  std::mt19937 rng(97);
  auto v = field({"r", "0", "x", "1"});
  auto w = field({"0", "f", "0", "y"});
  auto vw = field({"r", "f", "x", "1 + y"});
  for (int i = 0; i < 8; ++i) {
    Tensor a = testing_support::random_symmetric(rng), b = testing_support::random_symmetric(rng);
    CHECK(lie(v, a + b) == lie(v, a) + lie(v, b));
    CHECK(lie(vw, a) == lie(v, a) + lie(w, a));
    CHECK(lie(v, kulkarni_nomizu(a, b)) ==
          kulkarni_nomizu(lie(v, a), b) + kulkarni_nomizu(a, lie(v, b)));
  }
}
