#include <doctest.h>

#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"
#include "rtcalc/oracle.hpp"
#include "support.hpp"

using namespace rtcalc;
using namespace rtcalc::oracle;
using testing_support::P;

namespace {

void check_agrees(const Tensor& symbolic, const STensor& numeric, const SamplePoint& pt) {
  REQUIRE(symbolic.size() == numeric.c.size());
  std::vector<mpq_class> v = numeric.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    INFO("component offset " << i);
    CHECK(pt.eval(symbolic[i]) == v[i]);
  }
}

}  // namespace

TEST_CASE("sampler draws nonzero small rationals reproducibly") {
  Sampler a(5), b(5);
  for (int i = 0; i < 200; ++i) {
    mpq_class x = a.draw();
    CHECK(x == b.draw());
    CHECK(x != 0);
    CHECK(abs(x.get_num()) <= 9);
    CHECK(x.get_den() <= 9);
  }
}

TEST_CASE("series arithmetic reproduces Taylor coefficients") {
  Sampler s(3);
  SamplePoint pt(rt_context(), 3, s);
  Expr e = P("r^2*f/(1 + x*y)");
  Series ser = pt.series(e);
  CHECK(ser.constant() == pt.eval(e));
  std::size_t r = 1, x = 2;
  CHECK(ser.derivative(r).constant() == pt.eval(differentiate(e, rt_context()->coordinate(r))));
  CHECK(ser.derivative(x).derivative(r).constant() ==
        pt.eval(differentiate(differentiate(e, rt_context()->coordinate(x)), rt_context()->coordinate(r))));
  CHECK(ser.derivative(x).derivative(x).derivative(x).constant() ==
        pt.eval(differentiate(differentiate(differentiate(e, rt_context()->coordinate(x)), rt_context()->coordinate(x)),
                              rt_context()->coordinate(x))));
  CHECK((ser * ser.inverse()).constant() == 1);
  CHECK((ser * ser.inverse()).derivative(x).is_zero());
}

TEST_CASE("numeric curvature agrees with the symbolic engine on RT") {
  const Geometry& geo = rt_geometry();
  Sampler s(kDefaultSeed);
  for (int k = 0; k < 3; ++k) {
    SamplePoint pt(rt_context(), 3, s);
    NumericGeometry num(rt_metric(), pt);
    check_agrees(geo.riemann(), num.riemann(), pt);
    check_agrees(geo.ricci(), num.ricci(), pt);
    CHECK(pt.eval(geo.scalar()) == num.scalar().constant());
    check_agrees(weyl_conformal(geo), num.conformal(), pt);
    check_agrees(concircular(geo), num.concircular(), pt);
    check_agrees(conharmonic(geo), num.conharmonic(), pt);
    check_agrees(weyl_projective(geo), num.projective(), pt);
    check_agrees(hessian(geo, ScalarField{P("r^2")}), num.hessian(P("r^2")), pt);

    VectorField dx = coordinate_field(rt_context(), 2);
    auto xi = num.field(dx.xi);
    check_agrees(lie(dx, geo.riemann()), num.lie(xi, num.riemann()), pt);
    check_agrees(lie(dx, weyl_projective(geo)), num.lie(xi, num.projective()), pt);
    VectorField v{rt_context(), {P("0"), P("μ1"), P("μ2"), P("μ3*r")}};
    check_agrees(lie(v, geo.metric().tensor()), num.lie(num.field(v.xi), num.metric()), pt);
  }
}

TEST_CASE("imposing a condition moves the sample onto it") {
  Sampler s(11);
  SamplePoint pt(rt_context(), 3, s);
  Condition c{P("f_x^2 + f_y^2 - f*(f_xx + f_yy) - 2*a + 4*b*r"), P("r"), testing_support::atom("f_xx")};
  REQUIRE(pt.impose(c));
  CHECK(pt.eval(c.lhs) == pt.eval(c.rhs));
  CHECK(pt.eval(P("f_xx")) != 0);
  Series f = pt.series(P("f"));
  CHECK(f.derivative(2).derivative(2).constant() == pt.eval(P("f_xx")));
}

TEST_CASE("pointwise solve") {
  std::vector<std::vector<mpq_class>> basis{{1, 0, 1}, {0, 1, 1}};
  auto c = solve_at_point({2, 3, 5}, basis);
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 3);
  CHECK_FALSE(solve_at_point({2, 3, 6}, basis));
}
