#include "rtcalc/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "rtcalc/curvature.hpp"
#include "rtcalc/lie.hpp"
#include "rtcalc/rt.hpp"

namespace rtcalc {

namespace detail {
extern const char* const kBundledFixtures;
extern const char* const kBundledLedger;
}  // namespace detail

// ---------------------------------------------------------------- files

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

template <typename F>
void for_each_record(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    f(line_no, split(line, '\t'));
  }
}

}  // namespace

std::vector<Fixture> parse_fixtures(std::string_view text) {
  std::vector<Fixture> out;
  std::set<std::string, std::less<>> ids;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 4)
      throw FixtureError("line " + std::to_string(line) + ": expected 4 tab-separated fields, got " +
                         std::to_string(f.size()));
    if (f[0].empty() || f[1].empty() || f[3].empty())
      throw FixtureError("line " + std::to_string(line) + ": empty id, location or expression");
    std::string key = f[0][0] == '$' ? std::string(f[0]) + "@" + std::string(f[1]) : std::string(f[0]);
    if (!ids.insert(key).second) throw FixtureError("line " + std::to_string(line) + ": duplicate id " + key);
    out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), std::string(f[3]), line});
  });
  return out;
}

std::vector<Fixture> load_fixture_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot open fixture file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixtures(buf.str());
}

const std::vector<Fixture>& bundled_fixtures() {
  static const std::vector<Fixture> f = parse_fixtures(detail::kBundledFixtures);
  return f;
}

std::vector<KnownDiscrepancy> parse_known_discrepancies(std::string_view text) {
  std::vector<KnownDiscrepancy> out;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 || f[0].empty())
      throw FixtureError("ledger line " + std::to_string(line) + ": expected id and note");
    out.push_back({std::string(f[0]), std::string(f[1])});
  });
  return out;
}

const std::vector<KnownDiscrepancy>& bundled_known_discrepancies() {
  static const std::vector<KnownDiscrepancy> k = parse_known_discrepancies(detail::kBundledLedger);
  return k;
}

Bindings fixture_bindings(const std::vector<Fixture>& fixtures, std::string_view location, const Context& ctx) {
  Bindings out;
  for (std::string_view scope : {std::string_view("global"), location}) {
    for (const Fixture& f : fixtures) {
      if (f.id.empty() || f.id[0] != '$' || f.location != scope) continue;
      try {
        out[f.id.substr(1)] = parse(f.expression, ctx, &out);
      } catch (const ExprError& e) {
        throw FixtureError("line " + std::to_string(f.line) + ": macro " + f.id + ": " + e.what());
      }
    }
    if (location == "global") break;
  }
  return out;
}

// ---------------------------------------------------------------- report

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::computed_correct: return "ComputedCorrect";
    case Verdict::paper_correct: return "PaperCorrect";
    case Verdict::both_agree: return "BothAgree";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::matched: return "matched";
    case Outcome::ledgered: return "ledgered";
    case Outcome::failed: return "failed";
  }
  return "?";
}

std::size_t VerificationReport::count(Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const FixtureResult& r) { return r.outcome == o; }));
}

std::size_t VerificationReport::failed_claims() const {
  return static_cast<std::size_t>(
      std::count_if(claims.begin(), claims.end(), [](const ClaimResult& c) { return !c.held; }));
}

std::string VerificationReport::summary() const {
  return "fixtures: " + std::to_string(results.size()) + " total, " + std::to_string(count(Outcome::matched)) +
         " matched, " + std::to_string(count(Outcome::ledgered)) + " ledgered, " +
         std::to_string(count(Outcome::failed)) + " failed";
}

void VerificationReport::append(VerificationReport&& other) {
  for (auto& r : other.results) results.push_back(std::move(r));
  for (auto& l : other.ledger) ledger.push_back(std::move(l));
  for (auto& c : other.claims) claims.push_back(std::move(c));
}

// ---------------------------------------------------------------- shared machinery

namespace {

using oracle::NumericGeometry;
using oracle::SamplePoint;
using oracle::Series;
using oracle::STensor;
using Values = std::vector<mpq_class>;

constexpr unsigned kSeriesOrder = 3;
constexpr unsigned kMaxDraws = 4;  // candidate points per requested sample

std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ull;
  std::uint64_t z = seed ^ h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string value_str(const mpq_class& q) { return q.get_str(); }

Expr rt_parse(std::string_view s, const Bindings* b = nullptr) { return parse(s, *rt_context(), b); }

const Tensor& cached(const std::string& key, const std::function<Tensor()>& make) {
  static std::map<std::string, Tensor> cache;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make()).first;
  return it->second;
}

VectorField field_of(const std::vector<std::string>& xi) {
  VectorField v{rt_context(), {}};
  for (const auto& s : xi) v.xi.push_back(rt_parse(s));
  return v;
}

const std::vector<std::string> kDx = {"0", "0", "1", "0"};

/// One oracle point with everything the checks need, built once.
struct Sample {
  std::unique_ptr<SamplePoint> pt;
  std::unique_ptr<NumericGeometry> ng;
  std::map<std::string, STensor, std::less<>> tables;  // numeric tables by name
};

/// Lazily grown sequence of oracle points drawn from one seed, each moved
/// onto a fixed set of conditions.
class PointSet {
 public:
  PointSet(std::uint64_t seed, std::vector<Condition> conditions)
      : sampler_(seed), conditions_(std::move(conditions)) {}

  /// The k-th usable point, or nullptr when no further point can be found.
  Sample* at(std::size_t k) {
    while (points_.size() <= k) {
      if (failures_ > 200) return nullptr;
      Sample s;
      try {
        s.pt = std::make_unique<SamplePoint>(rt_context(), kSeriesOrder, sampler_);
        if (!s.pt->impose_all(conditions_)) {
          ++failures_;
          continue;
        }
        s.ng = std::make_unique<NumericGeometry>(rt_metric(), *s.pt);
      } catch (const std::exception&) {
        ++failures_;
        continue;
      }
      points_.push_back(std::move(s));
    }
    return &points_[k];
  }

 private:
  oracle::Sampler sampler_;
  std::vector<Condition> conditions_;
  std::vector<Sample> points_;
  unsigned failures_ = 0;
};

std::vector<std::pair<std::string, std::string>> point_of(const SamplePoint& pt, const std::vector<Expr>& exprs) {
  std::vector<AtomId> atoms;
  for (const Expr& e : exprs)
    for (AtomId a : e.atoms()) atoms.push_back(a);
  std::sort(atoms.begin(), atoms.end(), atom_less);
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (AtomId a : atoms) {
    auto it = pt.assignment().find(a);
    if (it != pt.assignment().end()) out.emplace_back(atom_name(a), value_str(it->second));
  }
  return out;
}

Verdict verdict_of(bool computed_ok, bool paper_ok) {
  if (computed_ok && paper_ok) return Verdict::both_agree;
  if (computed_ok) return Verdict::computed_correct;
  if (paper_ok) return Verdict::paper_correct;
  return Verdict::inconclusive;
}

struct Ledgerbook {
  std::map<std::string, std::string, std::less<>> known;
  std::set<std::string, std::less<>> used;

  explicit Ledgerbook(const std::vector<KnownDiscrepancy>& k) {
    for (const auto& d : k) known.emplace(d.id, d.note);
  }

  /// Files a mismatch and returns its outcome.
  Outcome file(VerificationReport& rep, FixtureResult& res, LedgerEntry entry) {
    auto it = known.find(entry.fixture_id);
    if (it != known.end()) {
      entry.note = it->second;
      used.insert(it->first);
    }
    Outcome o = Outcome::failed;
    if (entry.verdict != Verdict::computed_correct) {
      res.detail = std::string("oracle verdict ") + to_string(entry.verdict);
    } else if (it == known.end()) {
      res.detail = "discrepancy not in the known-discrepancy ledger";
    } else {
      o = Outcome::ledgered;
      res.detail = it->second;
    }
    rep.ledger.push_back(std::move(entry));
    return o;
  }

  Outcome matched(FixtureResult& res) {
    if (known.count(res.id)) {
      used.insert(res.id);
      res.detail = "matched, but listed in the known-discrepancy ledger";
      return Outcome::failed;
    }
    return Outcome::matched;
  }
};

// ---------------------------------------------------------------- component tables

struct TableSpec {
  std::string name;
  unsigned rank;
  std::function<Tensor()> symbolic;
  std::function<STensor(const NumericGeometry&)> numeric;
};

const std::vector<TableSpec>& table_specs() {
  static const std::vector<TableSpec> specs = [] {
    const Geometry& geo = rt_geometry();
    auto T = [&](const char* key) -> const Tensor& {
      return cached(key, [&, k = std::string(key)]() -> Tensor {
        if (k == "R") return geo.riemann();
        if (k == "S") return geo.ricci();
        if (k == "U") return kulkarni_nomizu(geo.metric().tensor(), geo.metric().tensor());
        if (k == "H") return kulkarni_nomizu(geo.metric().tensor(), geo.ricci());
        if (k == "D") return kulkarni_nomizu(geo.ricci(), geo.ricci());
        if (k == "C") return weyl_conformal(geo);
        if (k == "W") return concircular(geo);
        if (k == "K") return conharmonic(geo);
        if (k == "P") return weyl_projective(geo);
        throw FixtureError("unknown table " + k);
      });
    };
    auto N = [](const NumericGeometry& ng, const std::string& k) -> STensor {
      if (k == "R") return ng.riemann();
      if (k == "S") return ng.ricci();
      if (k == "U") return ng.kulkarni_nomizu(ng.metric(), ng.metric());
      if (k == "H") return ng.kulkarni_nomizu(ng.metric(), ng.ricci());
      if (k == "D") return ng.kulkarni_nomizu(ng.ricci(), ng.ricci());
      if (k == "C") return ng.conformal();
      if (k == "W") return ng.concircular();
      if (k == "K") return ng.conharmonic();
      if (k == "P") return ng.projective();
      throw FixtureError("unknown table " + k);
    };
    std::vector<TableSpec> v;
    for (const char* k : {"R", "S", "U", "H", "D", "C", "W", "K", "P"}) {
      unsigned rank = std::string_view(k) == "S" ? 2 : 4;
      v.push_back({k, rank, [=] { return T(k); }, [=](const NumericGeometry& ng) { return N(ng, k); }});
    }
    for (const char* k : {"R", "C", "W", "K", "P"}) {
      std::string name = std::string("LV") + k;
      v.push_back({name, 4,
                   [=] { return cached(name, [=] { return lie(field_of(kDx), T(k)); }); },
                   [=](const NumericGeometry& ng) { return ng.lie(ng.field(field_of(kDx).xi), N(ng, k)); }});
    }
    return v;
  }();
  return specs;
}

struct TableRef {
  const TableSpec* spec = nullptr;  // null for kappa
  std::size_t offset = 0;
};

std::optional<TableRef> table_ref(std::string_view id) {
  if (id == "kappa") return TableRef{};
  std::size_t dot = id.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string_view name = id.substr(0, dot), rest = id.substr(dot + 1);
  if (std::size_t hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
  for (const TableSpec& t : table_specs()) {
    if (name != t.name) continue;
    if (rest.size() != t.rank) return std::nullopt;
    std::size_t off = 0;
    for (char c : rest) {
      if (c < '1' || c > '4') return std::nullopt;
      off = off * 4 + static_cast<std::size_t>(c - '1');
    }
    return TableRef{&t, off};
  }
  return std::nullopt;
}

std::string label_of(std::size_t offset, unsigned rank) {
  std::string s(rank, '1');
  for (unsigned k = rank; k-- > 0;) {
    s[k] = static_cast<char>('1' + offset % 4);
    offset /= 4;
  }
  return s;
}

}  // namespace

const std::vector<std::string>& fixture_tables() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"kappa"};
    for (const auto& t : table_specs()) v.emplace_back(t.name);
    return v;
  }();
  return names;
}

VerificationReport verify_paper(const VerifyOptions& opts) {
  const std::vector<Fixture>& fixtures = opts.fixtures ? *opts.fixtures : bundled_fixtures();
  Ledgerbook book(opts.known ? *opts.known : bundled_known_discrepancies());
  VerificationReport rep;
  rep.seed = opts.seed;
  PointSet points(mix_seed(opts.seed, "tables"), {});
  const Geometry& geo = rt_geometry();

  for (const Fixture& fx : fixtures) {
    if (fx.id[0] == '$') continue;
    std::optional<TableRef> ref = table_ref(fx.id);
    if (!ref) continue;
    FixtureResult res{fx.id, fx.location, Outcome::failed, {}, fx.expression, {}};
    Expr paper, computed;
    try {
      Bindings b = fixture_bindings(fixtures, fx.location, *rt_context());
      paper = rt_parse(fx.expression, &b);
    } catch (const std::exception& e) {
      res.detail = std::string("unparsable expression: ") + e.what();
      rep.results.push_back(std::move(res));
      continue;
    }
    const Tensor* table = ref->spec ? &cached(ref->spec->name, ref->spec->symbolic) : nullptr;
    computed = table ? (*table)[ref->offset] : geo.scalar();
    res.computed = computed.str();
    res.paper = paper.str();
    if (computed == paper) {
      res.outcome = book.matched(res);
      rep.results.push_back(std::move(res));
      continue;
    }

    LedgerEntry entry{fx.id, res.computed, res.paper, Verdict::inconclusive, {}, {}, {}};
    bool computed_ok = true, paper_ok = true;
    std::size_t used = 0;
    for (std::size_t k = 0; used < opts.samples && k < kMaxDraws * opts.samples; ++k) {
      Sample* s = points.at(k);
      if (!s) break;
      mpq_class cv, pv, ov;
      try {
        cv = s->pt->eval(computed);
        pv = s->pt->eval(paper);
        if (ref->spec) {
          auto it = s->tables.find(ref->spec->name);
          if (it == s->tables.end()) it = s->tables.emplace(ref->spec->name, ref->spec->numeric(*s->ng)).first;
          ov = it->second.c[ref->offset].constant();
        } else {
          ov = s->ng->scalar().constant();
        }
      } catch (const ExprError&) {
        continue;
      }
      ++used;
      computed_ok = computed_ok && cv == ov;
      paper_ok = paper_ok && pv == ov;
      entry.evidence.push_back({point_of(*s->pt, {computed, paper}), value_str(cv), value_str(pv), value_str(ov)});
    }
    entry.verdict = used == opts.samples ? verdict_of(computed_ok, paper_ok) : Verdict::inconclusive;
    if (table) {
      for (std::size_t off = 0; off < table->size(); ++off)
        if ((*table)[off] == paper) entry.hints.push_back(ref->spec->name + "." + label_of(off, table->rank()));
      if (entry.hints.empty()) {
        for (const TableSpec& other : table_specs()) {
          if (other.rank != table->rank() || other.name == ref->spec->name) continue;
          const Expr& v = cached(other.name, other.symbolic)[ref->offset];
          if (v == paper) entry.hints.push_back(other.name + "." + label_of(ref->offset, table->rank()));
          else if (-v == paper) entry.hints.push_back("negated " + other.name + "." + label_of(ref->offset, table->rank()));
        }
      }
      if (entry.hints.empty() && ref->spec->name.rfind("LV", 0) == 0) {
        // Same tensor differentiated along another coordinate field.
        std::string base = ref->spec->name.substr(2);
        const Tensor& t = cached(base, [&] {
          for (const TableSpec& other : table_specs())
            if (other.name == base) return other.symbolic();
          throw FixtureError("unknown table " + base);
        });
        const auto& coords = rt_context()->coordinates();
        for (std::size_t k = 0; k < coords.size(); ++k) {
          const Tensor& lk = cached("L" + coords[k] + base, [&] { return lie(coordinate_field(rt_context(), k), t); });
          if (lk[ref->offset] == paper) entry.hints.push_back("Lie derivative along d/d" + coords[k]);
          else if (-lk[ref->offset] == paper) entry.hints.push_back("negated Lie derivative along d/d" + coords[k]);
        }
      }
      if (entry.hints.empty() && -computed == paper) entry.hints.push_back("negated");
    }
    res.outcome = book.file(rep, res, std::move(entry));
    rep.results.push_back(std::move(res));
  }
  return rep;
}

// ---------------------------------------------------------------- relation groups

namespace {

enum class GroupKind { lie_metric, soliton, gradient_soliton, inheritance, ricci_inheritance };

/// Maps a fixture suffix to a fit coefficient: printed value = sign * c[index].
struct Output {
  const char* suffix;
  std::size_t index;
  int sign;
};

struct GroupSpec {
  const char* id;
  GroupKind kind;
  std::vector<std::string> field;  // contravariant components
  std::string potential;           // gradient fields and gradient solitons
  std::string tensor;              // inheritance: R, C, W, K, P
  bool extended = false;
  std::vector<std::string> eta;
  std::vector<Output> outputs;
};

const std::vector<std::string> kDr = {"0", "1", "0", "0"}, kDy = {"0", "0", "0", "1"}, kDt = {"1", "0", "0", "0"};
const std::vector<std::string> kV1 = {"0", "μ1", "μ2", "μ3"}, kXY = {"0", "0", "μ1", "μ2"};
const std::vector<std::string> kEtaT = {"1", "0", "0", "0"}, kEtaR = {"0", "1", "0", "0"};

std::vector<Output> relation_outputs(bool eta) {
  std::vector<Output> o{{"S", 0, -1}, {"g", 1, -1}};
  if (eta) o.push_back({"eta", 2, -1});
  return o;
}

std::vector<Output> soliton_outputs(bool eta) {
  std::vector<Output> o{{"g", 0, -1}};
  if (eta) o.push_back({"eta", 1, 1});
  return o;
}

std::vector<Output> inheritance_outputs(const std::string& t, bool extended) {
  static std::set<std::string> names;  // keeps the suffix strings alive
  const char* first = names.insert("lambda_" + t).first->c_str();
  std::vector<Output> o{{first, 0, 1}, {"lambda_1", 1, 1}, {"lambda_2", 2, 1}};
  if (extended) o.push_back({"lambda_3", 3, 1});
  return o;
}

const std::vector<GroupSpec>& group_specs() {
  static const std::vector<GroupSpec> specs = [] {
    std::vector<GroupSpec> v;
    auto rel = [&](const char* id, std::vector<std::string> xi, std::string pot, std::vector<std::string> eta) {
      bool e = !eta.empty();
      v.push_back({id, GroupKind::lie_metric, std::move(xi), std::move(pot), {}, false, std::move(eta),
                   relation_outputs(e)});
    };
    rel("rel-dr", kDr, {}, kEtaT);
    rel("rel-dx", kDx, {}, {});
    rel("rel-dy", kDy, {}, {});
    rel("rel-v1", kV1, {}, kEtaT);
    rel("rel-grad", {}, "r^2", kEtaR);
    rel("killing-dt", kDt, {}, {});
    auto sol = [&](const char* id, std::vector<std::string> xi, std::vector<std::string> eta) {
      bool e = !eta.empty();
      v.push_back({id, GroupKind::soliton, std::move(xi), {}, {}, false, std::move(eta), soliton_outputs(e)});
    };
    auto grad = [&](const char* id) {
      v.push_back({id, GroupKind::gradient_soliton, {}, "r^2", {}, false, kEtaR, soliton_outputs(true)});
    };
    sol("sol-dr", kDr, kEtaT);
    sol("sol-dx", kDx, {});
    sol("sol-dx-c1", kDx, {});
    sol("sol-dy", kDy, {});
    sol("sol-v1", kV1, kEtaT);
    grad("sol-grad");
    sol("thm-sol-i", kDr, kEtaT);
    sol("thm-sol-ii", kDx, {});
    sol("thm-sol-iii", kDy, {});
    sol("thm-sol-iv", kV1, kEtaT);
    grad("thm-sol-v");
    for (const char* id : {"ricci-inh", "ricci-inh-b0", "cor-ricci-inh", "ricci-col"})
      v.push_back({id, GroupKind::ricci_inheritance, kXY, {}, {}, false, {}, {{"lambda_S", 0, 1}, {"lambda_g", 1, 1}}});
    auto inh = [&](const char* id, const char* t, bool extended) {
      v.push_back({id, GroupKind::inheritance, kDx, {}, t, extended, {}, inheritance_outputs(t, extended)});
    };
    for (const char* id : {"curv-inh", "curv-inh-bd0", "curv-col"}) inh(id, "R", false);
    for (const char* id : {"conf-inh", "conf-col"}) inh(id, "C", false);
    for (const char* id : {"concirc-inh", "concirc-col"}) inh(id, "W", false);
    for (const char* id : {"conh-inh", "conh-inh-bd0", "conh-col"}) inh(id, "K", false);
    inh("proj-inh", "P", true);
    inh("proj-inh-cond", "P", false);
    inh("proj-col", "P", false);
    return v;
  }();
  return specs;
}

const Tensor& symbolic_curvature(const std::string& t) {
  const Geometry& geo = rt_geometry();
  return cached(t, [&]() -> Tensor {
    if (t == "R") return geo.riemann();
    if (t == "C") return weyl_conformal(geo);
    if (t == "W") return concircular(geo);
    if (t == "K") return conharmonic(geo);
    if (t == "P") return weyl_projective(geo);
    throw FixtureError("unknown tensor " + t);
  });
}

STensor numeric_curvature(const NumericGeometry& ng, const std::string& t) {
  if (t == "R") return ng.riemann();
  if (t == "C") return ng.conformal();
  if (t == "W") return ng.concircular();
  if (t == "K") return ng.conharmonic();
  if (t == "P") return ng.projective();
  throw FixtureError("unknown tensor " + t);
}

std::optional<OneForm> one_form(const std::vector<std::string>& eta) {
  if (eta.empty()) return std::nullopt;
  OneForm w{rt_context(), {}};
  for (const auto& s : eta) w.eta.push_back(rt_parse(s));
  return w;
}

FitResult symbolic_fit(const GroupSpec& g, const FitOptions& opts) {
  const Geometry& geo = rt_geometry();
  std::optional<OneForm> eta = one_form(g.eta);
  VectorField xi = g.field.empty() ? gradient(geo, ScalarField{rt_parse(g.potential)}) : field_of(g.field);
  switch (g.kind) {
    case GroupKind::lie_metric: {
      Basis basis{{"S", geo.ricci()}, {"g", geo.metric().tensor()}};
      if (eta) basis.emplace_back("η⊗η", outer_square(*eta));
      return fit(lie(xi, geo.metric().tensor()), basis, opts);
    }
    case GroupKind::soliton: return fit_soliton(geo, xi, eta, opts);
    case GroupKind::gradient_soliton: return fit_gradient_soliton(geo, ScalarField{rt_parse(g.potential)}, eta, opts);
    case GroupKind::inheritance: return fit_inheritance(geo, symbolic_curvature(g.tensor), xi, g.extended, opts);
    case GroupKind::ricci_inheritance: return fit_ricci_inheritance(geo, xi, opts);
  }
  throw FixtureError("unknown group kind");
}

/// Target and basis values at a point, assembled by the oracle alone.
std::pair<Values, std::vector<Values>> numeric_system(const GroupSpec& g, const NumericGeometry& ng) {
  std::vector<Series> xi = g.field.empty() ? ng.gradient(rt_parse(g.potential)) : ng.field(field_of(g.field).xi);
  std::optional<OneForm> eta = one_form(g.eta);
  auto neg = [](Values v) {
    for (auto& x : v) x = -x;
    return v;
  };
  Values gv = ng.metric().values(), sv = ng.ricci().values();
  switch (g.kind) {
    case GroupKind::lie_metric: {
      std::vector<Values> basis{sv, gv};
      if (eta) basis.push_back(ng.outer_square(eta->eta).values());
      return {ng.lie(xi, ng.metric()).values(), basis};
    }
    case GroupKind::soliton:
    case GroupKind::gradient_soliton: {
      Values half = g.kind == GroupKind::soliton ? ng.lie(xi, ng.metric()).values()
                                                 : ng.hessian(rt_parse(g.potential)).values();
      Values target(half.size());
      for (std::size_t i = 0; i < half.size(); ++i)
        target[i] = -(g.kind == GroupKind::soliton ? half[i] / 2 : half[i]) - sv[i];
      std::vector<Values> basis{neg(gv)};
      if (eta) basis.push_back(ng.outer_square(eta->eta).values());
      return {target, basis};
    }
    case GroupKind::inheritance: {
      STensor t = numeric_curvature(ng, g.tensor);
      std::vector<Values> basis{t.values(), ng.kulkarni_nomizu(ng.metric(), ng.metric()).values(),
                                ng.kulkarni_nomizu(ng.metric(), ng.ricci()).values()};
      if (g.extended) basis.push_back(ng.kulkarni_nomizu(ng.ricci(), ng.ricci()).values());
      return {ng.lie(xi, t).values(), basis};
    }
    case GroupKind::ricci_inheritance: return {ng.lie(xi, ng.ricci()).values(), {sv, gv}};
  }
  throw FixtureError("unknown group kind");
}

bool solves(const Values& target, const std::vector<Values>& basis, const std::vector<mpq_class>& c) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    mpq_class s = target[i];
    for (std::size_t k = 0; k < basis.size(); ++k) s -= c[k] * basis[k][i];
    if (s != 0) return false;
  }
  return true;
}

/// Conditions of a group in file order. A hypothesis "f_v = 0" on a first
/// order jet states that f does not depend on v, so every jet carrying a
/// v-derivative (up to the series order) is set to zero.
std::vector<Condition> group_conditions(const std::vector<Fixture>& fixtures, const std::string& gid) {
  const Context& ctx = *rt_context();
  std::vector<Condition> out;
  const std::string prefix = gid + ".if:";
  for (const Fixture& fx : fixtures) {
    if (fx.id.rfind(prefix, 0) != 0) continue;
    std::string atom = fx.id.substr(prefix.size());
    std::size_t eq = fx.expression.find('=');
    if (eq == std::string::npos || fx.expression.find('=', eq + 1) != std::string::npos)
      throw FixtureError("line " + std::to_string(fx.line) + ": hypothesis must read \"lhs = rhs\"");
    Bindings b = fixture_bindings(fixtures, fx.location, ctx);
    Expr lhs = parse(fx.expression.substr(0, eq), ctx, &b), rhs = parse(fx.expression.substr(eq + 1), ctx, &b);
    Expr target = resolve_identifier(atom, ctx);
    if (target.num().size() != 1 || target.num().leading().mono.size() != 1 || !target.den().is_one())
      throw FixtureError("line " + std::to_string(fx.line) + ": cannot eliminate " + atom);
    AtomId id = mono_atom(target.num().leading().mono[0]);
    const AtomInfo& info = atom_info(id);
    if (info.kind == AtomKind::jet && info.total_order() == 1 && lhs == target && rhs.is_zero()) {
      std::size_t v = 0;
      while (info.orders[v] == 0) ++v;
      std::vector<std::uint16_t> orders(info.args.size(), 0);
      std::function<void(std::size_t, unsigned)> walk = [&](std::size_t slot, unsigned left) {
        if (slot == orders.size()) {
          unsigned total = 0;
          for (auto o : orders) total += o;
          if (orders[v] > 0 && total > 0) {
            AtomId j = jet_atom(info.name, info.args, orders);
            out.push_back({Expr::atom(j), Expr(0), j});
          }
          return;
        }
        for (unsigned k = 0; k <= left; ++k) {
          orders[slot] = static_cast<std::uint16_t>(k);
          walk(slot + 1, left - k);
        }
        orders[slot] = 0;
      };
      walk(0, kSeriesOrder);
      continue;
    }
    out.push_back({lhs, rhs, id});
  }
  return out;
}

std::string group_of(const std::string& id) {
  std::size_t dot = id.find('.');
  return dot == std::string::npos ? std::string() : id.substr(0, dot);
}

}  // namespace

const std::vector<std::string>& fixture_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& g : group_specs()) v.emplace_back(g.id);
    return v;
  }();
  return names;
}

FitResult fit_group(std::string_view group, const std::vector<Fixture>& fixtures) {
  for (const GroupSpec& g : group_specs())
    if (g.id == group) return symbolic_fit(g, FitOptions{group_conditions(fixtures, g.id), {}});
  throw FixtureError("unknown group " + std::string(group));
}

VerificationReport verify_theorems(const VerifyOptions& opts) {
  const std::vector<Fixture>& fixtures = opts.fixtures ? *opts.fixtures : bundled_fixtures();
  Ledgerbook book(opts.known ? *opts.known : bundled_known_discrepancies());
  VerificationReport rep;
  rep.seed = opts.seed;
  const Context& ctx = *rt_context();

  for (const GroupSpec& g : group_specs()) {
    std::vector<const Fixture*> members;
    for (const Fixture& fx : fixtures)
      if (group_of(fx.id) == g.id && fx.id.find(".if:") == std::string::npos) members.push_back(&fx);
    if (members.empty()) continue;

    auto fail_all = [&](const std::string& why) {
      for (const Fixture* fx : members)
        rep.results.push_back({fx->id, fx->location, Outcome::failed, {}, fx->expression, why});
    };

    std::vector<Condition> conditions;
    FitResult fr;
    try {
      conditions = group_conditions(fixtures, g.id);
      fr = symbolic_fit(g, FitOptions{conditions, {}});
    } catch (const std::exception& e) {
      fail_all(std::string("group could not be evaluated: ") + e.what());
      continue;
    }
    std::vector<Condition> chained = chain_conditions(conditions);
    auto apply = [&](Expr e) {
      for (const Condition& c : chained) e = substitute_condition(e, c);
      return e;
    };
    const bool solved = fr.status != FitStatus::inconsistent;

    // Printed values, by basis index.
    std::map<std::size_t, Expr> paper_by_index;
    std::vector<std::pair<const Fixture*, const Output*>> rows;
    std::vector<Expr> paper_values;
    for (const Fixture* fx : members) {
      std::string suffix = fx->id.substr(fx->id.find('.') + 1);
      const Output* out = nullptr;
      for (const Output& o : g.outputs)
        if (suffix == o.suffix) out = &o;
      if (!out) {
        rep.results.push_back({fx->id, fx->location, Outcome::failed, {}, fx->expression, "unknown coefficient"});
        continue;
      }
      try {
        Bindings b = fixture_bindings(fixtures, fx->location, ctx);
        Expr p = apply(parse(fx->expression, ctx, &b));
        paper_by_index[out->index] = p * Expr(out->sign);
        rows.emplace_back(fx, out);
        paper_values.push_back(p);
      } catch (const std::exception& e) {
        rep.results.push_back({fx->id, fx->location, Outcome::failed, {}, fx->expression,
                               std::string("unparsable expression: ") + e.what()});
      }
    }

    std::unique_ptr<PointSet> points;
    std::vector<std::pair<Values, std::vector<Values>>> systems;  // per drawn point, lazily
    auto system_at = [&](std::size_t k) -> std::pair<Sample*, const std::pair<Values, std::vector<Values>>*> {
      if (!points) points = std::make_unique<PointSet>(mix_seed(opts.seed, g.id), conditions);
      Sample* s = points->at(k);
      if (!s) return {nullptr, nullptr};
      while (systems.size() <= k) systems.push_back(numeric_system(g, *points->at(systems.size())->ng));
      return {s, &systems[k]};
    };

    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Fixture* fx = rows[r].first;
      const Output* out = rows[r].second;
      const Expr& paper = paper_values[r];
      FixtureResult res{fx->id, fx->location, Outcome::failed, {}, paper.str(), {}};
      Expr computed;
      if (solved) {
        computed = fr.coefficients.at(out->index).second * Expr(out->sign);
        res.computed = computed.str();
      } else {
        res.computed = std::string("(") + to_string(fr.status) + ")";
      }
      if (solved && computed == paper) {
        res.outcome = book.matched(res);
        rep.results.push_back(std::move(res));
        continue;
      }

      LedgerEntry entry{fx->id, res.computed, res.paper, Verdict::inconclusive, {}, {}, {}};
      bool computed_ok = true, paper_ok = true;
      std::size_t used = 0;
      for (std::size_t k = 0; used < opts.samples && k < kMaxDraws * opts.samples; ++k) {
        Sample* s = nullptr;
        const std::pair<Values, std::vector<Values>>* sys = nullptr;
        try {
          std::tie(s, sys) = system_at(k);
        } catch (const std::exception&) {
          continue;
        }
        if (!s) break;
        const auto& [target, basis] = *sys;
        std::vector<mpq_class> comp(basis.size(), 0), claimed(basis.size(), 0);
        mpq_class pv;
        try {
          pv = s->pt->eval(paper);
          if (solved) {
            for (std::size_t i = 0; i < basis.size(); ++i) comp[i] = s->pt->eval(fr.coefficients.at(i).second);
            claimed = comp;
            claimed[out->index] = pv * out->sign;
          } else {
            for (const auto& [idx, e] : paper_by_index) claimed[idx] = s->pt->eval(e);
          }
        } catch (const ExprError&) {
          continue;
        }
        ++used;
        std::optional<std::vector<mpq_class>> sol = oracle::solve_at_point(target, basis);
        bool c_ok = solved ? solves(target, basis, comp) : !sol.has_value();
        bool p_ok = solves(target, basis, claimed);
        computed_ok = computed_ok && c_ok;
        paper_ok = paper_ok && p_ok;
        std::string ov = sol ? value_str((*sol)[out->index] * out->sign) : "no solution";
        std::vector<Expr> shown{paper};
        if (solved) shown.push_back(computed);
        entry.evidence.push_back({point_of(*s->pt, shown), solved ? value_str(comp[out->index] * out->sign) : res.computed,
                                  value_str(pv), ov});
      }
      entry.verdict = used == opts.samples ? verdict_of(computed_ok, paper_ok) : Verdict::inconclusive;
      if (solved && -computed == paper) entry.hints.push_back("negated");
      if (solved && fx->location != "global") {
        try {
          Bindings global = fixture_bindings(fixtures, "global", ctx);
          for (const Fixture& m : fixtures)
            if (m.id[0] == '$' && m.location == fx->location && !global.count(m.id.substr(1)))
              global[m.id.substr(1)] = parse(m.expression, ctx, &global);
          if (apply(parse(fx->expression, ctx, &global)) == computed)
            entry.hints.push_back("matches with the global macro definitions");
        } catch (const ExprError&) {
        }
      }
      if (!solved) entry.hints.push_back(std::string("fit is ") + to_string(fr.status) + " under the stated hypotheses");
      res.outcome = book.file(rep, res, std::move(entry));
      rep.results.push_back(std::move(res));
    }
  }

  // Nonexistence of Yamabe solitons along α d/dr + β d/dx + γ d/dy.
  const Geometry& geo = rt_geometry();
  VectorField xi = field_of({"0", "α", "β", "γ"});
  for (bool with_eta : {false, true}) {
    ClaimResult c;
    c.id = with_eta ? "yamabe-eta" : "yamabe";
    c.statement = with_eta ? "no eta-Yamabe soliton along a d/dr + b d/dx + c d/dy"
                           : "no Yamabe soliton along a d/dr + b d/dx + c d/dy";
    std::optional<OneForm> eta = with_eta ? one_form(kEtaT) : std::nullopt;
    FitResult yr = fit_yamabe(geo, xi, eta);
    GroupSpec spec{"yamabe", GroupKind::lie_metric, {"0", "α", "β", "γ"}, {}, {}, false, {}, {}};
    PointSet pts(mix_seed(opts.seed, c.id), {});
    std::size_t solvable = 0, used = 0;
    for (std::size_t k = 0; used < opts.samples && k < kMaxDraws * opts.samples; ++k) {
      Sample* s = pts.at(k);
      if (!s) break;
      std::vector<Series> f = s->ng->field(xi.xi);
      Values half = s->ng->lie(f, s->ng->metric()).values();
      for (auto& x : half) x /= 2;
      std::vector<Values> basis{s->ng->metric().values()};
      if (eta) basis.push_back(s->ng->outer_square(eta->eta).values());
      ++used;
      if (oracle::solve_at_point(half, basis)) ++solvable;
    }
    c.held = yr.status == FitStatus::inconsistent && solvable == 0 && used == opts.samples;
    c.detail = std::string("fit ") + to_string(yr.status) + "; solvable at " + std::to_string(solvable) + " of " +
               std::to_string(used) + " oracle points";
    rep.claims.push_back(std::move(c));
  }
  return rep;
}

VerificationReport verify_all(const VerifyOptions& opts) {
  VerificationReport rep = verify_paper(opts);
  rep.append(verify_theorems(opts));
  return rep;
}

}  // namespace rtcalc
