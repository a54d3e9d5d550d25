#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"
#include "rtcalc/metric_spec.hpp"
#include "rtcalc/parse.hpp"
#include "rtcalc/rt.hpp"

namespace {

using namespace rtcalc;
using report::Json;

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Expr> parse_components(const std::string& spec, const Context& ctx, const char* what) {
  std::vector<std::string> parts = split_list(spec);
  if (parts.size() != ctx.dimension())
    throw UsageError(std::string(what) + " needs " + std::to_string(ctx.dimension()) + " comma-separated components, got " +
                     std::to_string(parts.size()));
  std::vector<Expr> out;
  for (const std::string& p : parts) out.push_back(parse(p, ctx));
  return out;
}

Tensor curvature_tensor(const Geometry& geo, const std::string& name) {
  if (name == "metric") return geo.metric().tensor();
  if (name == "riemann") return geo.riemann();
  if (name == "ricci") return geo.ricci();
  if (name == "einstein") return geo.einstein();
  if (name == "gaussian") return gaussian(geo);
  if (name == "weyl") return weyl_conformal(geo);
  if (name == "concircular") return concircular(geo);
  if (name == "conharmonic") return conharmonic(geo);
  if (name == "projective") return weyl_projective(geo);
  throw UsageError("unknown tensor '" + name + "'");
}

const std::vector<std::string> kCurvatureSelectors{"riemann",     "ricci",       "scalar",
                                                   "einstein",    "gaussian",    "weyl",
                                                   "concircular", "conharmonic", "projective"};

struct Globals {
  std::string format = "text";
  std::uint64_t seed = oracle::kDefaultSeed;
  std::size_t max_terms = 0;
};

struct FitArgs {
  std::string mode, tensor = "ricci", field, potential, eta;
  bool extended = false;
  std::vector<std::string> constraints, eliminate;
};

Json cmd_curvature(const std::string& file, const std::string& selector, const Globals& g) {
  Geometry geo(load_metric_spec(file));
  Json components = Json::array();
  if (selector == "scalar") {
    if (!geo.scalar().is_zero())
      components.push_back({{"indices", ""}, {"value", report::expr_string(geo.scalar(), g.max_terms)}});
  } else {
    components = report::components(curvature_tensor(geo, selector), g.max_terms);
  }
  return {{"tensor", selector}, {"components", components}};
}

Json cmd_lie(const std::string& file, const std::string& field, const std::string& selector, const Globals& g) {
  Geometry geo(load_metric_spec(file));
  VectorField xi{geo.context(), parse_components(field, geo.ctx(), "--field")};
  Tensor target = curvature_tensor(geo, selector);
  return {{"tensor", selector}, {"field", field}, {"components", report::components(lie(xi, target), g.max_terms)}};
}

Json cmd_fit(const std::string& file, const FitArgs& a, const Globals& g) {
  Geometry geo(load_metric_spec(file));
  const Context& ctx = geo.ctx();
  if (a.constraints.size() != a.eliminate.size())
    throw UsageError("each --constraint needs a matching --eliminate");
  FitOptions opts;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const std::string& c = a.constraints[i];
    std::size_t eq = c.find('=');
    if (eq == std::string::npos || c.find('=', eq + 1) != std::string::npos)
      throw UsageError("constraint '" + c + "' must have the form lhs = rhs");
    Expr atom = resolve_identifier(a.eliminate[i], ctx);
    std::vector<AtomId> ids = atom.atoms();
    if (ids.size() != 1 || Expr::atom(ids[0]) != atom) throw UsageError("'" + a.eliminate[i] + "' is not a single atom");
    opts.conditions.push_back({parse(c.substr(0, eq), ctx), parse(c.substr(eq + 1), ctx), ids[0]});
  }
  std::optional<OneForm> eta;
  if (!a.eta.empty()) eta = OneForm{geo.context(), parse_components(a.eta, ctx, "--eta")};
  auto need_field = [&] {
    if (a.field.empty()) throw UsageError("--mode " + a.mode + " needs --field");
    return VectorField{geo.context(), parse_components(a.field, ctx, "--field")};
  };

  FitResult r;
  if (a.mode == "soliton") {
    r = fit_soliton(geo, need_field(), eta, opts);
  } else if (a.mode == "gradient-soliton") {
    if (a.potential.empty()) throw UsageError("--mode gradient-soliton needs --potential");
    r = fit_gradient_soliton(geo, ScalarField{parse(a.potential, ctx)}, eta, opts);
  } else if (a.mode == "yamabe") {
    r = fit_yamabe(geo, need_field(), eta, opts);
  } else if (a.mode == "inheritance") {
    if (a.tensor == "ricci") {
      r = fit_ricci_inheritance(geo, need_field(), opts);
    } else {
      Tensor t = curvature_tensor(geo, a.tensor);
      if (t.rank() != 4) throw UsageError("inheritance needs ricci or a (0,4) tensor");
      r = fit_inheritance(geo, t, need_field(), a.extended, opts);
    }
  } else {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  Json out = report::fit_result(r, g.max_terms);
  out["mode"] = a.mode;
  return out;
}

Json cmd_parse_check(const std::string& file, const std::vector<std::string>& exprs, const std::string& fixtures,
                     bool& ok) {
  Json out = Json::object();
  if (!file.empty()) {
    Metric m = load_metric_spec(file);
    out["metric"] = {{"dimension", m.dim()}, {"components", report::components(m.tensor(), 0)}};
    Json parsed = Json::array();
    for (const std::string& e : exprs) parsed.push_back({{"source", e}, {"canonical", parse(e, m.ctx()).str()}});
    out["expressions"] = parsed;
  }
  if (!fixtures.empty()) {
    std::vector<Fixture> fx = load_fixture_file(fixtures);
    Json errors = Json::array();
    for (const Fixture& f : fx) {
      try {
        Bindings b = fixture_bindings(fx, f.location, *rt_context());
        std::size_t hyp = f.id.find(".if:");
        if (hyp == std::string::npos) {
          parse(f.expression, *rt_context(), &b);
          continue;
        }
        resolve_identifier(f.id.substr(hyp + 4), *rt_context());
        std::size_t eq = f.expression.find('=');
        if (eq == std::string::npos || f.expression.find('=', eq + 1) != std::string::npos)
          throw UsageError("hypothesis must read \"lhs = rhs\"");
        parse(f.expression.substr(0, eq), *rt_context(), &b);
        parse(f.expression.substr(eq + 1), *rt_context(), &b);
      } catch (const std::exception& e) {
        errors.push_back({{"id", f.id}, {"line", f.line}, {"error", e.what()}});
      }
    }
    ok = errors.empty();
    out["fixtures"] = {{"records", fx.size()}, {"errors", errors}};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tensor calculus on metric spaces, with a verification suite for the Robinson-Trautman tables"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "Oracle seed");
  app.add_option("--max-terms", g.max_terms, "Elide expressions with more terms (0: never)");

  std::string metric_file, tensor, field;
  auto* curv = app.add_subcommand("curvature", "Nonzero components of a curvature tensor");
  curv->fallthrough();
  curv->add_option("metric", metric_file, "Metric file")->required();
  curv->add_option("--tensor", tensor, "Tensor")->required()->check(CLI::IsMember(kCurvatureSelectors));

  auto* lie_cmd = app.add_subcommand("lie", "Nonzero components of a Lie derivative");
  lie_cmd->fallthrough();
  lie_cmd->add_option("metric", metric_file, "Metric file")->required();
  lie_cmd->add_option("--field", field, "Contravariant components, comma separated")->required();
  lie_cmd->add_option("--tensor", tensor, "Tensor (or metric)")->required();

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Soliton, Yamabe and inheritance fits");
  fit_cmd->fallthrough();
  fit_cmd->add_option("metric", metric_file, "Metric file")->required();
  fit_cmd->add_option("--mode", fa.mode, "Fit mode")
      ->required()
      ->check(CLI::IsMember({"soliton", "gradient-soliton", "yamabe", "inheritance"}));
  fit_cmd->add_option("--tensor", fa.tensor, "Tensor for inheritance (default ricci)");
  fit_cmd->add_flag("--extended", fa.extended, "Add S∧S to the inheritance basis");
  fit_cmd->add_option("--field", fa.field, "Contravariant components, comma separated");
  fit_cmd->add_option("--potential", fa.potential, "Potential function for gradient solitons");
  fit_cmd->add_option("--eta", fa.eta, "Covariant components of η, comma separated");
  fit_cmd->add_option("--constraint", fa.constraints, "Side condition lhs = rhs (repeatable)");
  fit_cmd->add_option("--eliminate", fa.eliminate, "Atom solved for by the matching --constraint");

  std::string fixtures_file, ledger_file;
  auto* verify = app.add_subcommand("verify-paper", "Check every bundled fixture against the engine");
  verify->fallthrough();
  verify->add_option("--fixtures", fixtures_file, "Fixture file to use instead of the bundled one");
  verify->add_option("--ledger", ledger_file, "Known-discrepancy file to use instead of the bundled one");

  std::vector<std::string> exprs;
  std::string check_fixtures;
  auto* check = app.add_subcommand("parse-check", "Parse a metric file, expressions or a fixture file");
  check->fallthrough();
  check->add_option("metric", metric_file, "Metric file");
  check->add_option("--expr", exprs, "Expression over the metric's symbols (repeatable)");
  check->add_option("--fixtures", check_fixtures, "Fixture file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::vector<std::string> command(argv + 1, argv + argc);
  int status = 0;
  Json result;
  try {
    if (*curv) {
      result = cmd_curvature(metric_file, tensor, g);
    } else if (*lie_cmd) {
      result = cmd_lie(metric_file, field, tensor, g);
    } else if (*fit_cmd) {
      result = cmd_fit(metric_file, fa, g);
    } else if (*verify) {
      VerifyOptions opts;
      opts.seed = g.seed;
      if (!fixtures_file.empty()) opts.fixtures = load_fixture_file(fixtures_file);
      if (!ledger_file.empty()) {
        std::ifstream in(ledger_file, std::ios::binary);
        if (!in) throw UsageError("cannot open " + ledger_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        opts.known = parse_known_discrepancies(buf.str());
      }
      VerificationReport rep = verify_all(opts);
      result = report::verification(rep);
      if (!rep.passed()) status = kExitVerification;
    } else if (*check) {
      if (metric_file.empty() && check_fixtures.empty()) throw UsageError("parse-check needs a metric file or --fixtures");
      if (!exprs.empty() && metric_file.empty()) throw UsageError("--expr needs a metric file");
      bool ok = true;
      result = cmd_parse_check(metric_file, exprs, check_fixtures, ok);
      if (!ok) status = kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::cout << report::render(report::envelope(command, g.seed, std::move(result)),
                              g.format == "json" ? report::Format::json : report::Format::text);
  return status;
}
