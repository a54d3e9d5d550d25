#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "report.hpp"
#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"
#include "rtcalc/rt.hpp"
#include "support.hpp"

using namespace rtcalc;
using report::Json;

namespace {

struct Run {
  int status;
  std::string out;
};

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rtcalc-test-" + std::to_string(getpid()) + "-" + name);
}

Run cli(const std::string& args) {
  auto out = scratch("out");
  std::string cmd = std::string("'") + RTCALC_CLI + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::filesystem::remove(out);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, buf.str()};
}

std::string rt() { return std::string("'") + RTCALC_DATA_DIR + "/rt.metric'"; }
std::string flat() { return std::string("'") + RTCALC_DATA_DIR + "/minkowski.metric'"; }

Json json(const std::string& args) {
  Run r = cli("--format json " + args);
  REQUIRE(r.status == 0);
  return Json::parse(r.out);
}

Json component(const Json& doc, const std::string& indices) {
  for (const Json& c : doc["result"]["components"])
    if (c["indices"] == indices) return c["value"];
  return nullptr;
}

std::string write_fixtures(const std::vector<Fixture>& fx, const std::string& name) {
  auto path = scratch(name);
  std::ofstream out(path);
  for (const Fixture& f : fx) out << f.id << '\t' << f.location << '\t' << f.quote << '\t' << f.expression << '\n';
  return path.string();
}

}  // namespace

TEST_CASE("text reports rebuild the JSON document") {
  Json doc = report::envelope({"x", "y"}, 7,
                              {{"list", {1, 2, {{"k", "v: w"}}}}, {"empty", Json::array()}, {"obj", Json::object()},
                               {"flag", true}, {"s", "a\"b"}});
  CHECK(report::parse_text(report::render(doc, report::Format::text)) == doc);
  for (const char* args : {"curvature RT --tensor ricci", "fit RT --mode yamabe --field 0,α,β,γ",
                           "lie RT --field 0,0,1,0 --tensor metric"}) {
    std::string a = args;
    a.replace(a.find("RT"), 2, rt());
    Json from_text = report::parse_text(cli(a).out), direct = json(a);
    from_text.erase("command");  // the echo differs by the --format flag
    direct.erase("command");
    CHECK(from_text == direct);
  }
}

TEST_CASE("curvature") {
  Json ricci = json("curvature " + rt() + " --tensor ricci");
  CHECK(component(ricci, "1 2") == "-4*b/r");
  for (const Json& c : ricci["result"]["components"])
    CHECK(parse(c["value"].get<std::string>(), *rt_context()).str() == c["value"]);
  CHECK(ricci["seed"] == oracle::kDefaultSeed);
  CHECK(ricci["engine_version"] == std::string(report::kEngineVersion));

  CHECK(json("curvature " + flat() + " --tensor riemann")["result"]["components"].empty());
  CHECK(component(json("curvature " + rt() + " --tensor scalar"), "") == rt_geometry().scalar().str());

  Json weyl = json("curvature " + rt() + " --tensor weyl");
  Tensor C = weyl_conformal(rt_geometry());
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < C.size(); ++i) nonzero += !C[i].is_zero();
  CHECK(weyl["result"]["components"].size() == nonzero);
  CHECK(component(weyl, "1 3 1 3") == C(0, 2, 0, 2).str());

  Json elided = json("--max-terms 2 curvature " + rt() + " --tensor scalar");
  CHECK(component(elided, "") == "<" + std::to_string(rt_geometry().scalar().term_count()) + " terms>");
}

TEST_CASE("lie") {
  CHECK(json("lie " + rt() + " --field 1,0,0,0 --tensor metric")["result"]["components"].empty());
  CHECK(json("lie " + rt() + " --field 0,0,0,0 --tensor weyl")["result"]["components"].empty());
  Json lr = json("lie " + rt() + " --field 0,0,1,0 --tensor riemann");
  Tensor expected = lie(coordinate_field(rt_context(), 2), rt_geometry().riemann());
  CHECK(component(lr, "1 3 2 3") == expected(0, 2, 1, 2).str());
}

TEST_CASE("fit") {
  Json y = json("fit " + rt() + " --mode yamabe --field 0,α,β,γ --eta 1,0,0,0");
  CHECK(y["result"]["status"] == "Inconsistent");
  Json s = json("fit " + flat() + " --mode soliton --field 0,0,0,0");
  CHECK(s["result"]["status"] == "Exact");
  CHECK(s["result"]["coefficients"][0]["value"] == "0");
  Json gri = json("fit " + rt() + " --mode inheritance --tensor ricci --field 0,0,μ1,μ2");
  CHECK(gri["result"]["classification"] == "GeneralizedInheritance");
  Json c = json("fit " + rt() + " --mode inheritance --tensor ricci --field 0,0,μ1,μ2 --constraint 'μ2 = 0' "
                "--eliminate μ2 --constraint 'μ1 = 0' --eliminate μ1");
  CHECK(c["result"]["classification"] == "Collineation");
  Json grad = json("fit " + rt() + " --mode gradient-soliton --potential r^2 --eta 0,1,0,0");
  CHECK(grad["result"]["coefficients"].size() == 2);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(cli("curvature " + rt() + " --tensor bogus").status == 2);
  CHECK(cli("curvature /nonexistent.metric --tensor ricci").status == 2);
  CHECK(cli("lie " + rt() + " --field 0,1 --tensor riemann").status == 2);
  CHECK(cli("lie " + rt() + " --field 0,1,w,0 --tensor riemann").status == 2);
  CHECK(cli("fit " + rt() + " --mode soliton --field 0,0,1,0 --constraint 'a b' --eliminate a").status == 2);
  CHECK(cli("fit " + rt() + " --mode soliton --field 0,0,1,0 --constraint 'a = b'").status == 2);
  CHECK(cli("fit " + rt() + " --mode soliton").status == 2);
  CHECK(cli("--format xml curvature " + rt() + " --tensor ricci").status == 2);
  CHECK(cli("").status == 2);
}

TEST_CASE("parse-check") {
  Json p = json("parse-check " + rt() + " --expr '2/3^2' --expr 'f_xy*x'");
  CHECK(p["result"]["expressions"][0]["canonical"] == "2/9");
  CHECK(p["result"]["expressions"][1]["canonical"] == "x*f_xy");
  Json f = json("parse-check --fixtures '" + std::string(RTCALC_DATA_DIR) + "/rt_fixtures.tsv'");
  CHECK(f["result"]["fixtures"]["errors"].empty());
}

TEST_CASE("verify-paper on a fixture subset") {
  std::vector<Fixture> fx;
  for (const Fixture& f : bundled_fixtures())
    if (f.id[0] == '$' || f.id.rfind("U.", 0) == 0 || f.id == "kappa") fx.push_back(f);
  std::string good = write_fixtures(fx, "good.tsv");
  Run a = cli("--format json verify-paper --fixtures '" + good + "'");
  Run b = cli("--format json verify-paper --fixtures '" + good + "'");
  Run c = cli("--format json --seed 7 verify-paper --fixtures '" + good + "'");
  CHECK(a.status == 0);
  CHECK(c.status == 0);
  CHECK(a.out == b.out);
  Json ja = Json::parse(a.out), jc = Json::parse(c.out);
  CHECK(ja["result"]["summary"] == jc["result"]["summary"]);
  CHECK(ja["result"]["fixtures"] == jc["result"]["fixtures"]);
  CHECK(ja["result"]["ledger"] != jc["result"]["ledger"]);

  for (Fixture& f : fx)
    if (f.id == "kappa") f.expression = "2*(" + f.expression + ")";
  std::string bad = write_fixtures(fx, "bad.tsv");
  CHECK(cli("verify-paper --fixtures '" + bad + "'").status == 1);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}
