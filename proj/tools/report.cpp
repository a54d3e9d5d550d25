#include "report.hpp"

#include <sstream>
#include <stdexcept>

namespace rtcalc::report {

std::string expr_string(const Expr& e, std::size_t max_terms) {
  if (max_terms && e.term_count() > max_terms) return "<" + std::to_string(e.term_count()) + " terms>";
  return e.str();
}

Json components(const Tensor& t, std::size_t max_terms) {
  Json out = Json::array();
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (t[off].is_zero()) continue;
    std::string idx;
    for (std::size_t i : t.indices_of(off)) idx += (idx.empty() ? "" : " ") + std::to_string(i + 1);
    out.push_back({{"indices", idx}, {"value", expr_string(t[off], max_terms)}});
  }
  return out;
}

Json fit_result(const FitResult& r, std::size_t max_terms) {
  Json coefficients = Json::array();
  for (const auto& [name, value] : r.coefficients)
    coefficients.push_back({{"name", name}, {"value", expr_string(value, max_terms)}});
  Json out = {{"status", to_string(r.status)},
              {"classification", to_string(r.classification)},
              {"coefficients", coefficients},
              {"free", r.free},
              {"residual", components(r.residual, max_terms)}};
  if (!r.kind.empty()) out["kind"] = r.kind;
  return out;
}

Json verification(const VerificationReport& r) {
  Json fixtures = Json::array();
  for (const FixtureResult& f : r.results)
    fixtures.push_back({{"id", f.id},
                        {"location", f.location},
                        {"outcome", to_string(f.outcome)},
                        {"computed", f.computed},
                        {"paper", f.paper},
                        {"detail", f.detail}});
  Json ledger = Json::array();
  for (const LedgerEntry& l : r.ledger) {
    Json evidence = Json::array();
    for (const SampleEvidence& s : l.evidence) {
      Json point = Json::object();
      for (const auto& [atom, value] : s.point) point[atom] = value;
      evidence.push_back({{"point", point}, {"computed", s.computed}, {"paper", s.paper}, {"oracle", s.oracle}});
    }
    ledger.push_back({{"fixture_id", l.fixture_id},
                      {"computed", l.computed},
                      {"paper", l.paper},
                      {"verdict", to_string(l.verdict)},
                      {"hints", l.hints},
                      {"note", l.note},
                      {"evidence", evidence}});
  }
  Json claims = Json::array();
  for (const ClaimResult& c : r.claims)
    claims.push_back({{"id", c.id}, {"statement", c.statement}, {"held", c.held}, {"detail", c.detail}});
  Json summary = {{"total", r.results.size()},
                  {"matched", r.count(Outcome::matched)},
                  {"ledgered", r.count(Outcome::ledgered)},
                  {"failed", r.count(Outcome::failed)},
                  {"claims_failed", r.failed_claims()},
                  {"passed", r.passed()},
                  {"line", r.summary()}};
  return {{"summary", summary}, {"fixtures", fixtures}, {"ledger", ledger}, {"claims", claims}};
}

Json envelope(const std::vector<std::string>& command, std::uint64_t seed, Json result) {
  return {{"command", command}, {"engine_version", kEngineVersion}, {"seed", seed}, {"result", std::move(result)}};
}

namespace {

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out += path + ": " + j.dump() + "\n";
  }
}

}  // namespace

std::string render(const Json& doc, Format format) {
  if (format == Format::json) return doc.dump(2) + "\n";
  std::string out;
  flatten(doc, "", out);
  return out;
}

Json parse_text(std::string_view text) {
  Json doc = Json::object();
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::size_t sep = line.find(": ");
    if (sep == std::string::npos) throw std::runtime_error("malformed report line: " + line);
    std::string path = line.substr(0, sep);
    Json* node = &doc;
    std::size_t pos = 0;
    while (pos < path.size()) {
      if (path[pos] == '[') {
        std::size_t close = path.find(']', pos);
        std::size_t index = std::stoul(path.substr(pos + 1, close - pos - 1));
        node = &(*node)[index];
        pos = close + 1;
      } else {
        if (path[pos] == '.') ++pos;
        std::size_t end = path.find_first_of(".[", pos);
        if (end == std::string::npos) end = path.size();
        node = &(*node)[path.substr(pos, end - pos)];
        pos = end;
      }
    }
    *node = Json::parse(line.substr(sep + 2));
  }
  return doc;
}

}  // namespace rtcalc::report
