#include "rtcalc/expr.hpp"

#include <algorithm>
#include <set>

namespace rtcalc {

// ---------------------------------------------------------------- Context

Context::Context(std::vector<std::string> coordinates, std::vector<std::string> parameters,
                 std::vector<FunctionDecl> functions)
    : coordinates_(std::move(coordinates)),
      parameters_(std::move(parameters)),
      functions_(std::move(functions)) {
  if (coordinates_.empty()) throw ExprError("a context needs at least one coordinate");
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (name.empty()) throw ExprError("empty name in context");
    if (!seen.insert(name).second) throw ExprError("name declared twice: " + name);
  };
  for (const auto& c : coordinates_) claim(c);
  for (const auto& p : parameters_) claim(p);
  for (const auto& [name, args] : functions_) {
    claim(name);
    for (const auto& a : args)
      if (std::find(coordinates_.begin(), coordinates_.end(), a) == coordinates_.end())
        throw ExprError("argument '" + a + "' of function '" + name + "' is not a coordinate");
  }
  for (const auto& c : coordinates_) coordinate_atoms_.push_back(coordinate_atom(c));
}

std::optional<std::size_t> Context::coordinate_index(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i)
    if (coordinates_[i] == name) return i;
  return std::nullopt;
}

bool Context::is_parameter(std::string_view name) const {
  return std::find(parameters_.begin(), parameters_.end(), name) != parameters_.end();
}

const std::vector<std::string>* Context::function_args(std::string_view name) const {
  for (const auto& [fname, args] : functions_)
    if (fname == name) return &args;
  return nullptr;
}

bool operator==(const Context& a, const Context& b) {
  return a.coordinates_ == b.coordinates_ && a.parameters_ == b.parameters_ &&
         a.functions_ == b.functions_;
}

// ---------------------------------------------------------------- Expr

Expr::Expr() {
  static const auto zero = std::make_shared<const Rep>(Rep{Poly(), Poly(1)});
  rep_ = zero;
}

Expr::Expr(long value) : Expr(mpq_class(value)) {}

Expr::Expr(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  rep_ = std::make_shared<const Rep>(Rep{Poly(v.get_num()), Poly(v.get_den())});
}

Expr Expr::atom(AtomId id) { return Expr(std::make_shared<const Rep>(Rep{Poly::atom(id), Poly(1)})); }

Expr Expr::reduced(Poly num, Poly den) {
  if (num.is_zero()) return Expr();
  if (den.canonical_leading_coefficient() < 0) {
    num = -num;
    den = -den;
  }
  return Expr(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)}));
}

Expr Expr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw ExprError("division by zero");
  if (num.is_zero()) return Expr();
  if (!den.is_one()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = *num.divide_exact(g);
      den = *den.divide_exact(g);
    }
  }
  return reduced(std::move(num), std::move(den));
}

mpq_class Expr::constant_value() const {
  mpq_class v(num().constant_value(), den().constant_value());
  v.canonicalize();
  return v;
}

std::vector<AtomId> Expr::atoms() const {
  std::vector<AtomId> a = num().atoms(), b = den().atoms();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool Expr::contains(AtomId v) const { return num().contains(v) || den().contains(v); }

Expr Expr::operator-() const {
  if (is_zero()) return *this;
  return Expr(std::make_shared<const Rep>(Rep{-num(), den()}));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den().is_one() && b.den().is_one()) return Expr::reduced(a.num() + b.num(), Poly(1));
  if (a.den() == b.den()) return Expr::fraction(a.num() + b.num(), a.den());
  // Henrici: only the common part of the denominators can cancel.
  Poly g = gcd(a.den(), b.den());
  if (g.is_one()) return Expr::reduced(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
  Poly ad = *a.den().divide_exact(g), bd = *b.den().divide_exact(g);
  Poly num = a.num() * bd + b.num() * ad;
  Poly den = a.den() * bd;
  if (num.is_zero()) return Expr();
  Poly h = gcd(num, g);
  if (!h.is_one()) {
    num = *num.divide_exact(h);
    den = *den.divide_exact(h);
  }
  return Expr::reduced(std::move(num), std::move(den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  Poly an = a.num(), ad = a.den(), bn = b.num(), bd = b.den();
  if (!bd.is_one()) {
    Poly g = gcd(an, bd);
    if (!g.is_one()) {
      an = *an.divide_exact(g);
      bd = *bd.divide_exact(g);
    }
  }
  if (!ad.is_one()) {
    Poly g = gcd(bn, ad);
    if (!g.is_one()) {
      bn = *bn.divide_exact(g);
      ad = *ad.divide_exact(g);
    }
  }
  return Expr::reduced(an * bn, ad * bd);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw ExprError("division by zero");
  Expr inv = Expr::reduced(b.den(), b.num());
  return a * inv;
}

Expr Expr::pow(long exponent) const {
  if (exponent == 0) return Expr(1);
  if (exponent < 0) {
    if (is_zero()) throw ExprError("division by zero");
    return Expr::reduced(den().pow(static_cast<unsigned>(-exponent)),
                         num().pow(static_cast<unsigned>(-exponent)));
  }
  return Expr::reduced(num().pow(static_cast<unsigned>(exponent)),
                       den().pow(static_cast<unsigned>(exponent)));
}

bool operator==(const Expr& a, const Expr& b) {
  return a.rep_ == b.rep_ || (a.num() == b.num() && a.den() == b.den());
}

Expr arith(ArithOp op, const Expr& lhs, const Expr& rhs) {
  switch (op) {
    case ArithOp::add: return lhs + rhs;
    case ArithOp::sub: return lhs - rhs;
    case ArithOp::mul: return lhs * rhs;
    case ArithOp::div: return lhs / rhs;
    case ArithOp::neg: return -lhs;
    case ArithOp::pow: {
      if (!rhs.is_constant()) throw ExprError("exponent must be an integer");
      mpq_class e = rhs.constant_value();
      if (e.get_den() != 1 || !e.get_num().fits_slong_p())
        throw ExprError("exponent must be an integer");
      return lhs.pow(e.get_num().get_si());
    }
  }
  throw ExprError("unknown arithmetic operation");
}

// ---------------------------------------------------------------- calculus

namespace {

Poly poly_derivative(const Poly& p, AtomId coord) {
  const std::string coord_name = atom_info(coord).name;
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    for (auto packed : t.mono) {
      AtomId a = mono_atom(packed);
      unsigned e = mono_exp(packed);
      AtomId next;
      if (a == coord) {
        Monomial m = mono_div(t.mono, Monomial{mono_pack(a, 1)});
        out.push_back({std::move(m), t.coef * e});
      } else if (jet_derivative(a, coord_name, next)) {
        Monomial m = mono_div(t.mono, Monomial{mono_pack(a, 1)});
        m = mono_mul(m, Monomial{mono_pack(next, 1)});
        out.push_back({std::move(m), t.coef * e});
      }
    }
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

Expr differentiate(const Expr& e, AtomId coordinate) {
  if (atom_info(coordinate).kind != AtomKind::coordinate)
    throw ExprError("can only differentiate along a coordinate");
  Poly dn = poly_derivative(e.num(), coordinate);
  Poly dd = poly_derivative(e.den(), coordinate);
  if (dd.is_zero()) return Expr::fraction(std::move(dn), e.den());
  return Expr::fraction(dn * e.den() - e.num() * dd, e.den() * e.den());
}

Expr differentiate(const Expr& e, const Context& ctx, std::string_view coordinate) {
  auto i = ctx.coordinate_index(coordinate);
  if (!i) throw ExprError("not a coordinate: " + std::string(coordinate));
  return differentiate(e, ctx.coordinate(*i));
}

mpq_class eval_numeric(const Poly& p, const Assignment& values) {
  mpq_class sum = 0;
  for (const auto& t : p.terms()) {
    mpq_class term(t.coef);
    for (auto packed : t.mono) {
      auto it = values.find(mono_atom(packed));
      if (it == values.end()) throw UnassignedAtom("no value for " + atom_name(mono_atom(packed)));
      mpq_class power = 1;
      for (unsigned k = 0; k < mono_exp(packed); ++k) power *= it->second;
      term *= power;
    }
    sum += term;
  }
  return sum;
}

mpq_class eval_numeric(const Expr& e, const Assignment& values) {
  mpq_class den = eval_numeric(e.den(), values);
  if (den == 0) throw ZeroDenominator("denominator vanishes at the sample point");
  mpq_class v = eval_numeric(e.num(), values) / den;
  v.canonicalize();
  return v;
}

namespace {
Expr substitute_poly(const Poly& p, AtomId v, const Expr& value) {
  if (!p.contains(v)) return Expr::fraction(p, Poly(1));
  std::vector<Poly> coeffs = p.coefficients_in(v);
  Expr acc;
  for (std::size_t k = coeffs.size(); k-- > 0;)
    acc = acc * value + Expr::fraction(coeffs[k], Poly(1));
  return acc;
}
}  // namespace

Expr substitute(const Expr& e, AtomId v, const Expr& value) {
  if (!e.contains(v)) return e;
  Expr den = substitute_poly(e.den(), v, value);
  if (den.is_zero()) throw ExprError("substitution makes a denominator vanish");
  return substitute_poly(e.num(), v, value) / den;
}

// ---------------------------------------------------------------- printing

std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Poly::Term* t : p.canonical_terms()) {
    bool negative = t->coef < 0;
    mpz_class mag = abs(t->coef);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    first = false;
    std::vector<std::uint32_t> factors(t->mono.begin(), t->mono.end());
    std::sort(factors.begin(), factors.end(), [](std::uint32_t x, std::uint32_t y) {
      return atom_less(mono_atom(x), mono_atom(y));
    });
    bool need_star = false;
    if (factors.empty() || mag != 1) {
      out += mag.get_str();
      need_star = true;
    }
    for (auto packed : factors) {
      if (need_star) out += "*";
      out += atom_name(mono_atom(packed));
      if (mono_exp(packed) > 1) out += "^" + std::to_string(mono_exp(packed));
      need_star = true;
    }
  }
  return out;
}

std::string Expr::str() const {
  std::string n = poly_str(num());
  if (den().is_one()) return n;
  if (num().size() > 1) n = "(" + n + ")";
  std::string d = poly_str(den());
  const auto& terms = den().terms();
  bool bare = terms.size() == 1 && terms[0].coef == 1 && terms[0].mono.size() == 1;
  bool plain_number = den().is_constant();
  if (!bare && !plain_number) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace rtcalc
