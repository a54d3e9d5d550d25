#include <doctest.h>

#include <numeric>

#include "rtcalc/curvature.hpp"
#include "rtcalc/fitter.hpp"
#include "rtcalc/lie.hpp"
#include "rtcalc/oracle.hpp"
#include "support.hpp"

using namespace rtcalc;
using testing_support::atom;
using testing_support::P;

namespace {

VectorField field(std::initializer_list<const char*> comps) {
  VectorField v{rt_context(), {}};
  for (const char* c : comps) v.xi.push_back(P(c));
  return v;
}

Metric minkowski() {
  auto ctx = std::make_shared<const Context>(std::vector<std::string>{"t", "x", "y", "z"}, std::vector<std::string>{},
                                             std::vector<Context::FunctionDecl>{});
  std::vector<Expr> g(16);
  g[0] = Expr(-1);
  g[5] = g[10] = g[15] = Expr(1);
  return Metric(ctx, g);
}

}  // namespace

TEST_CASE("fit recovers a constructed combination") {
  const Geometry& geo = rt_geometry();
  const Tensor& g = geo.metric().tensor();
  testing_support::TreeGen gen(11);
  for (int k = 0; k < 5; ++k) {
    Expr c1 = gen.tree(2), c2 = gen.tree(2);
    Tensor target = geo.ricci().scaled(c1) + g.scaled(c2);
    FitResult r = fit(target, {{"S", geo.ricci()}, {"g", g}});
    REQUIRE(r.status == FitStatus::exact);
    CHECK(r.residual.is_zero());
    CHECK(r.coefficient("S") == c1);
    CHECK(r.coefficient("g") == c2);
  }
}

TEST_CASE("fit does not depend on the row order") {
  const Geometry& geo = rt_geometry();
  Tensor target = lie(field({"0", "0", "μ1", "μ2"}), geo.ricci());
  Basis basis{{"S", geo.ricci()}, {"g", geo.metric().tensor()}};
  FitResult a = fit(target, basis);
  std::vector<std::size_t> order(16);
  std::iota(order.rbegin(), order.rend(), 0);
  FitResult b = fit(target, basis, FitOptions{{}, order});
  CHECK(a.status == b.status);
  CHECK(a.coefficient("S") == b.coefficient("S"));
  CHECK(a.coefficient("g") == b.coefficient("g"));
  CHECK_THROWS_AS(fit(target, basis, FitOptions{{}, {0, 1, 2}}), GeometryError);
}

TEST_CASE("inconsistent and underdetermined systems") {
  const Geometry& geo = rt_geometry();
  const Tensor& g = geo.metric().tensor();
  FitResult r = fit(g, {{"S", geo.ricci()}});
  CHECK(r.status == FitStatus::inconsistent);
  CHECK_FALSE(r.residual.is_zero());
  CHECK(r.classification == FitClass::none);

  FitResult u = fit(g, {{"g", g}, {"2g", g.scaled(Expr(2))}});
  CHECK(u.status == FitStatus::underdetermined);
  CHECK(u.free == std::vector<std::string>{"2g"});
  CHECK(u.coefficient("g") == Expr(1));
}

TEST_CASE("side conditions") {
  Condition c{P("a"), P("2*b"), atom("a")};
  CHECK(solve_condition(c) == P("2*b"));
  CHECK(substitute_condition(P("a^2 - 4*b^2 + r"), c) == P("r"));
  CHECK_THROWS_AS(solve_condition(Condition{P("a"), P("2*b"), atom("d")}), ConditionError);
  CHECK_THROWS_AS(solve_condition(Condition{P("d^2"), P("b"), atom("d")}), ConditionError);
  CHECK(substitute_condition(P("d + r"), Condition{P("d"), P("d"), atom("d")}) == P("d + r"));

  // The second condition mentions the atom eliminated by the first.
  std::vector<Condition> chain = chain_conditions({{P("a"), P("2*b"), atom("a")}, {P("a + d"), P("0"), atom("d")}});
  Expr e = P("a + d + b");
  for (const Condition& k : chain) e = substitute_condition(e, k);
  CHECK(e == P("b"));

  const Geometry& geo = rt_geometry();
  const Tensor& g = geo.metric().tensor();
  Tensor target = geo.ricci() + g.scaled(P("a - 2*b"));
  CHECK(fit(target, {{"S", geo.ricci()}}).status == FitStatus::inconsistent);
  FitResult r = fit(target, {{"S", geo.ricci()}}, FitOptions{{c}, {}});
  CHECK(r.status == FitStatus::exact);
  CHECK(r.coefficient("S") == Expr(1));
}

TEST_CASE("flat space: the zero field is a steady soliton") {
  Geometry flat(minkowski());
  VectorField zero{flat.context(), std::vector<Expr>(4, Expr(0))};
  FitResult r = fit_soliton(flat, zero, std::nullopt);
  CHECK(r.status == FitStatus::exact);
  CHECK(r.coefficient("mu").is_zero());
}

TEST_CASE("generalized Ricci inheritance along mu1 d/dx + mu2 d/dy") {
  const Geometry& geo = rt_geometry();
  FitResult r = fit_ricci_inheritance(geo, field({"0", "0", "μ1", "μ2"}));
  REQUIRE(r.status == FitStatus::exact);
  CHECK(r.classification == FitClass::generalized_inheritance);
  // The tr component of L_ξ S vanishes, tying the two coefficients.
  CHECK(r.coefficient("g") == r.coefficient("S") * P("4*b/r"));
}

TEST_CASE("Killing and zero fields give collineations") {
  const Geometry& geo = rt_geometry();
  FitResult r = fit_inheritance(geo, geo.riemann(), coordinate_field(rt_context(), 0), false);
  CHECK(r.status == FitStatus::exact);
  CHECK(r.classification == FitClass::collineation);
  FitResult z = fit_ricci_inheritance(geo, field({"0", "0", "0", "0"}));
  CHECK(z.classification == FitClass::collineation);
}

TEST_CASE("inheritance along d/dx is exact and agrees with the oracle") {
  const Geometry& geo = rt_geometry();
  oracle::Sampler sampler(oracle::kDefaultSeed);
  oracle::SamplePoint pt(rt_context(), 3, sampler);
  oracle::NumericGeometry ng(geo.metric(), pt);
  std::vector<oracle::Series> dx = ng.field(coordinate_field(rt_context(), 2).xi);
  struct Case {
    const char* name;
    Tensor t;
    oracle::STensor nt;
  };
  for (const Case& c : {Case{"R", geo.riemann(), ng.riemann()}, Case{"C", weyl_conformal(geo), ng.conformal()},
                        Case{"W", concircular(geo), ng.concircular()}, Case{"K", conharmonic(geo), ng.conharmonic()}}) {
    CAPTURE(c.name);
    FitResult r = fit_inheritance(geo, c.t, coordinate_field(rt_context(), 2), false);
    REQUIRE(r.status == FitStatus::exact);
    REQUIRE(r.coefficients.size() == 3);
    std::vector<mpq_class> target = ng.lie(dx, c.nt).values();
    std::vector<std::vector<mpq_class>> basis{c.nt.values(), ng.kulkarni_nomizu(ng.metric(), ng.metric()).values(),
                                              ng.kulkarni_nomizu(ng.metric(), ng.ricci()).values()};
    for (std::size_t i = 0; i < target.size(); ++i) {
      mpq_class s = target[i];
      for (std::size_t k = 0; k < 3; ++k) s -= pt.eval(r.coefficients[k].second) * basis[k][i];
      CHECK(s == 0);
    }
  }
}

TEST_CASE("no Yamabe soliton along a d/dr + b d/dx + c d/dy") {
  const Geometry& geo = rt_geometry();
  VectorField xi = field({"0", "α", "β", "γ"});
  CHECK(fit_yamabe(geo, xi, std::nullopt).status == FitStatus::inconsistent);
  OneForm eta{rt_context(), {Expr(1), Expr(0), Expr(0), Expr(0)}};
  CHECK(fit_yamabe(geo, xi, eta).status == FitStatus::inconsistent);
}

TEST_CASE("gradient solitons require a genuine gradient identity") {
  const Geometry& geo = rt_geometry();
  OneForm eta{rt_context(), {Expr(0), Expr(1), Expr(0), Expr(0)}};
  FitResult r = fit_gradient_soliton(geo, ScalarField{P("r^2")}, eta);
  FitResult v = fit_soliton(geo, gradient(geo, ScalarField{P("r^2")}), eta);
  CHECK(r.status == v.status);
  CHECK(r.coefficient("mu") == v.coefficient("mu"));
}
