#include "rtcalc/metric_spec.hpp"

#include <fstream>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include "rtcalc/parse.hpp"

namespace rtcalc {

MetricSpecError::MetricSpecError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line(line) {}

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Entry {
  std::size_t line;
  std::size_t i, j;
  std::size_t column;  // 0-based column of source[0] in the file line
  std::string source;
};

}  // namespace

Metric parse_metric_spec(std::string_view text) {
  std::vector<std::string> coordinates, parameters;
  std::vector<Context::FunctionDecl> functions;
  std::vector<Entry> entries;
  std::string section;
  std::set<std::string> seen_sections;
  static const std::regex function_re(R"(([^\s(]+)\s*\(([^)]*)\))");
  static const std::regex key_re(R"(g_(?:(\d)(\d)|(\d+)_(\d+)))");

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw MetricSpecError(line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "coordinates" && section != "parameters" && section != "functions" && section != "metric")
        throw MetricSpecError(line_no, "unknown section [" + section + "]");
      if (!seen_sections.insert(section).second) throw MetricSpecError(line_no, "section [" + section + "] repeated");
      continue;
    }
    if (section.empty()) throw MetricSpecError(line_no, "content before the first section");
    if (section == "coordinates") {
      for (auto& w : words(line)) coordinates.push_back(w);
    } else if (section == "parameters") {
      for (auto& w : words(line)) parameters.push_back(w);
    } else if (section == "functions") {
      std::smatch m;
      std::string rest = line;
      while (std::regex_search(rest, m, function_re)) {
        if (!trim(m.prefix().str()).empty()) throw MetricSpecError(line_no, "malformed function declaration");
        std::string args = m[2].str();
        for (char& c : args)
          if (c == ',') c = ' ';
        functions.emplace_back(m[1].str(), words(args));
        rest = m.suffix().str();
      }
      if (!trim(rest).empty()) throw MetricSpecError(line_no, "malformed function declaration");
    } else {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw MetricSpecError(line_no, "expected g_ij = expression");
      std::string key = trim(std::string_view(line).substr(0, eq));
      std::smatch m;
      if (!std::regex_match(key, m, key_re)) throw MetricSpecError(line_no, "bad component name '" + key + "'");
      std::size_t i = std::stoul(m[1].matched ? m[1].str() : m[3].str());
      std::size_t j = std::stoul(m[2].matched ? m[2].str() : m[4].str());
      entries.push_back({line_no, i, j, raw.find_first_not_of(" \t") + eq + 1, line.substr(eq + 1)});
    }
  }

  ContextPtr ctx;
  try {
    ctx = std::make_shared<const Context>(coordinates, parameters, functions);
  } catch (const ExprError& e) {
    throw MetricSpecError(0, e.what());
  }
  const std::size_t n = ctx->dimension();
  std::vector<Expr> g(n * n);
  std::vector<bool> given(n * n, false);
  for (const Entry& e : entries) {
    if (e.i < 1 || e.j < 1 || e.i > n || e.j > n) throw MetricSpecError(e.line, "index out of range");
    if (e.i > e.j) throw MetricSpecError(e.line, "give components with i <= j");
    std::size_t off = (e.i - 1) * n + (e.j - 1);
    if (given[off]) throw MetricSpecError(e.line, "component given twice");
    given[off] = true;
    Expr v;
    try {
      v = parse(e.source, *ctx);
    } catch (const ParseError& pe) {
      throw MetricSpecError(e.line, "column " + std::to_string(e.column + pe.position + 1) + ": " + pe.what());
    } catch (const ExprError& ee) {
      throw MetricSpecError(e.line, ee.what());
    }
    g[off] = v;
    g[(e.j - 1) * n + (e.i - 1)] = v;
  }
  try {
    return Metric(ctx, std::move(g));
  } catch (const std::exception& e) {
    throw MetricSpecError(0, e.what());
  }
}

Metric load_metric_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MetricSpecError(0, "cannot open metric file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metric_spec(buf.str());
}

}  // namespace rtcalc
