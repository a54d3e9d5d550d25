#include <doctest.h>

#include <set>

#include "rtcalc/curvature.hpp"
#include "rtcalc/fixtures.hpp"
#include "support.hpp"

using namespace rtcalc;
using testing_support::P;

namespace {

std::string prefix_of(const std::string& id) { return id.substr(0, id.find('.')); }

std::vector<Fixture> subset(std::set<std::string> prefixes) {
  std::vector<Fixture> out;
  for (const Fixture& f : bundled_fixtures())
    if (f.id[0] == '$' || prefixes.count(prefix_of(f.id))) out.push_back(f);
  return out;
}

VerificationReport run_paper(std::vector<Fixture> fx, std::uint64_t seed = oracle::kDefaultSeed,
                             std::optional<std::vector<KnownDiscrepancy>> known = std::nullopt) {
  VerifyOptions o;
  o.seed = seed;
  o.fixtures = std::move(fx);
  o.known = std::move(known);
  return verify_paper(o);
}

const FixtureResult& result_for(const VerificationReport& rep, const std::string& id) {
  for (const FixtureResult& r : rep.results)
    if (r.id == id) return r;
  FAIL("no result for " << id);
  throw std::logic_error("unreachable");
}

bool known_id(const std::string& id) {
  for (const KnownDiscrepancy& k : bundled_known_discrepancies())
    if (k.id == id) return true;
  return false;
}

}  // namespace

TEST_CASE("fixture records") {
  auto fx = parse_fixtures("# comment\n\nR.1212\tt1\tquote\t-2*a\n$F\tt1\t\tf_x^2\nS.12\tt2\tq\t$F + 1\n");
  REQUIRE(fx.size() == 3);
  CHECK(fx[0].id == "R.1212");
  CHECK(fx[0].location == "t1");
  CHECK(fx[0].quote == "quote");
  CHECK(fx[0].expression == "-2*a");
  CHECK(fx[0].line == 3);
  CHECK(fx[1].quote.empty());

  CHECK_THROWS_AS(parse_fixtures("R.1212\tt1\t-2*a\n"), FixtureError);
  CHECK_THROWS_AS(parse_fixtures("R.1212\tt1\tq\t1\nR.1212\tt2\tq\t2\n"), FixtureError);
  CHECK_THROWS_AS(parse_fixtures("$F\tt1\tq\t1\n$F\tt1\tq\t2\n"), FixtureError);
  CHECK_NOTHROW(parse_fixtures("$F\tt1\tq\t1\n$F\tt2\tq\t2\n"));
}

TEST_CASE("macro scopes") {
  auto fx = parse_fixtures("$F\tglobal\t\tr\n$G\tglobal\t\tx\n$F\tt1\t\ty\n");
  Bindings b = fixture_bindings(fx, "t1", *rt_context());
  CHECK(b.at("F") == P("y"));
  CHECK(b.at("G") == P("x"));
  Bindings g = fixture_bindings(fx, "elsewhere", *rt_context());
  CHECK(g.at("F") == P("r"));
}

TEST_CASE("known discrepancy records") {
  auto k = parse_known_discrepancies("# id\tnote\nU.1313#2\tsign flipped\n");
  REQUIRE(k.size() == 1);
  CHECK(k[0].id == "U.1313#2");
  CHECK(k[0].note == "sign flipped");
}

TEST_CASE("bundled fixtures cover every table and group") {
  std::set<std::string> prefixes;
  for (const Fixture& f : bundled_fixtures()) prefixes.insert(prefix_of(f.id));
  for (const std::string& t : fixture_tables()) CHECK_MESSAGE(prefixes.count(t), t);
  for (const std::string& g : fixture_groups()) CHECK_MESSAGE(prefixes.count(g), g);
  std::set<std::string> ids;
  for (const Fixture& f : bundled_fixtures())
    if (f.id[0] != '$') ids.insert(f.id);
  for (const KnownDiscrepancy& k : bundled_known_discrepancies()) CHECK_MESSAGE(ids.count(k.id), k.id);
}

TEST_CASE("curvature tables verify") {
  VerificationReport rep = run_paper(subset({"R", "S", "kappa"}));
  CHECK(rep.passed());
  CHECK(rep.count(Outcome::matched) > 0);
  for (const LedgerEntry& e : rep.ledger) CHECK(e.verdict == Verdict::computed_correct);
}

TEST_CASE("a corrupted value fails") {
  std::vector<Fixture> fx = subset({"R", "S", "kappa"});
  Fixture* victim = nullptr;
  for (Fixture& f : fx)
    if (f.id[0] != '$' && !known_id(f.id)) victim = &f;
  REQUIRE(victim);
  victim->expression = "(" + victim->expression + ") + r";
  VerificationReport rep = run_paper(fx);
  CHECK_FALSE(rep.passed());
  const FixtureResult& r = result_for(rep, victim->id);
  CHECK(r.outcome == Outcome::failed);
  REQUIRE(rep.ledger.size() >= 1);
  bool found = false;
  for (const LedgerEntry& e : rep.ledger)
    if (e.fixture_id == victim->id) {
      found = true;
      CHECK(e.verdict == Verdict::computed_correct);
      CHECK(e.evidence.size() == 20);
    }
  CHECK(found);
}

TEST_CASE("an unparsable value fails") {
  std::vector<Fixture> fx = subset({"kappa"});
  for (Fixture& f : fx)
    if (f.id == "kappa") f.expression = "2*(";
  CHECK(result_for(run_paper(fx), "kappa").outcome == Outcome::failed);
}

TEST_CASE("a listed id that now matches is reported") {
  std::vector<Fixture> fx = subset({"R", "S", "kappa"});
  std::string matched;
  for (const Fixture& f : fx)
    if (f.id[0] != '$' && !known_id(f.id)) matched = f.id;
  std::vector<KnownDiscrepancy> known = bundled_known_discrepancies();
  known.push_back({matched, "stale"});
  VerificationReport rep = run_paper(fx, oracle::kDefaultSeed, known);
  CHECK(result_for(rep, matched).outcome == Outcome::failed);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("an unlisted discrepancy fails") {
  std::vector<Fixture> fx = subset({"R", "S", "kappa"});
  VerificationReport rep = run_paper(fx, oracle::kDefaultSeed, std::vector<KnownDiscrepancy>{});
  CHECK(rep.count(Outcome::ledgered) == 0);
  CHECK(rep.count(Outcome::failed) == rep.ledger.size());
}

TEST_CASE("verification is deterministic and its partition does not depend on the seed") {
  std::vector<Fixture> fx = subset({"U", "kappa"});
  VerificationReport a = run_paper(fx), b = run_paper(fx), c = run_paper(fx, 7);
  REQUIRE(a.results.size() == c.results.size());
  REQUIRE(a.ledger.size() == c.ledger.size());
  REQUIRE(!a.ledger.empty());
  bool evidence_differs = false;
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].id == c.results[i].id);
    CHECK(a.results[i].outcome == b.results[i].outcome);
    CHECK(a.results[i].outcome == c.results[i].outcome);
  }
  for (std::size_t i = 0; i < a.ledger.size(); ++i) {
    CHECK(a.ledger[i].verdict == c.ledger[i].verdict);
    CHECK(a.ledger[i].hints == b.ledger[i].hints);
    for (std::size_t k = 0; k < a.ledger[i].evidence.size(); ++k) {
      CHECK(a.ledger[i].evidence[k].point == b.ledger[i].evidence[k].point);
      if (a.ledger[i].evidence[k].point != c.ledger[i].evidence[k].point) evidence_differs = true;
    }
  }
  CHECK(evidence_differs);
}

TEST_CASE("soliton along d/dr under its hypotheses") {
  FitResult r = fit_group("sol-dr", bundled_fixtures());
  REQUIRE(r.status == FitStatus::exact);
  CHECK(r.coefficient("mu") == P("-4*b/r"));
  CHECK(r.coefficient("lambda") == P("(d - 2*b*r^2)/r^2"));
  CHECK_THROWS_AS(fit_group("no-such-group", bundled_fixtures()), FixtureError);
}

TEST_CASE("a relation group verifies, and its seed does not change the outcome") {
  std::vector<Fixture> fx = subset({"thm-sol-iv"});
  VerifyOptions o;
  o.fixtures = fx;
  VerificationReport a = verify_theorems(o);
  o.seed = 7;
  VerificationReport b = verify_theorems(o);
  CHECK(a.passed());
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) CHECK(a.results[i].outcome == b.results[i].outcome);
  REQUIRE(a.claims.size() == 2);
  for (const ClaimResult& c : a.claims) CHECK(c.held);
}

TEST_CASE("the S∧S coefficient of projective inheritance vanishes under the extra hypotheses") {
  const Context& ctx = *rt_context();
  const std::vector<Fixture>& fx = bundled_fixtures();
  FitOptions opts;
  for (const Fixture& f : fx) {
    if (f.id.rfind("proj-inh-cond.if:", 0) != 0) continue;
    Bindings b = fixture_bindings(fx, f.location, ctx);
    std::size_t eq = f.expression.find('=');
    Expr target = resolve_identifier(f.id.substr(f.id.find(':') + 1), ctx);
    opts.conditions.push_back({parse(f.expression.substr(0, eq), ctx, &b), parse(f.expression.substr(eq + 1), ctx, &b),
                               target.atoms().front()});
  }
  REQUIRE(opts.conditions.size() == 2);
  const Geometry& geo = rt_geometry();
  FitResult r = fit_inheritance(geo, weyl_projective(geo), coordinate_field(rt_context(), 2), true, opts);
  REQUIRE(r.status == FitStatus::exact);
  CHECK(r.coefficient("S∧S").is_zero());
  CHECK(r.coefficient(r.coefficients[0].first).is_zero());
}
