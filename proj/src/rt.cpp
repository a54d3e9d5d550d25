#include "rtcalc/rt.hpp"

#include "rtcalc/parse.hpp"

namespace rtcalc {

ContextPtr rt_context() {
  static const ContextPtr ctx = std::make_shared<const Context>(
      std::vector<std::string>{"t", "r", "x", "y"},
      std::vector<std::string>{"a", "b", "d", "μ1", "μ2", "μ3", "c1", "α", "β", "γ"},
      std::vector<Context::FunctionDecl>{{"f", {"x", "y"}}});
  return ctx;
}

const Metric& rt_metric() {
  static const Metric g = [] {
    ContextPtr ctx = rt_context();
    auto p = [&](const char* s) { return parse(s, *ctx); };
    std::vector<Expr> c(16);
    c[0] = p("-2*(a - 2*b*r - d/r)");
    c[1] = c[4] = Expr(1);
    c[10] = c[15] = p("-r^2/f^2");
    return Metric(ctx, std::move(c));
  }();
  return g;
}

const Geometry& rt_geometry() {
  static const Geometry geo(rt_metric());
  return geo;
}

}  // namespace rtcalc
