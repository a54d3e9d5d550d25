#include "rtcalc/parse.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace rtcalc {

namespace {

const char* kind_label(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::syntax: return "syntax error";
    case ParseError::Kind::undeclared_identifier: return "undeclared identifier";
    case ParseError::Kind::zero_denominator: return "zero literal denominator";
    case ParseError::Kind::non_integer_exponent: return "non-integer exponent";
    case ParseError::Kind::division_by_zero: return "division by zero";
  }
  return "error";
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

Expr jet(const std::string& fname, const std::vector<std::string>& args,
         const std::vector<std::uint16_t>& orders) {
  return Expr::atom(jet_atom(fname, args, orders));
}

// All ways of writing `suffix` as a concatenation of argument names.
void split_suffix(std::string_view suffix, const std::vector<std::string>& args,
                  std::vector<std::uint16_t>& orders, std::set<std::vector<std::uint16_t>>& found) {
  if (found.size() > 1) return;
  if (suffix.empty()) {
    found.insert(orders);
    return;
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (suffix.substr(0, args[i].size()) == args[i]) {
      ++orders[i];
      split_suffix(suffix.substr(args[i].size()), args, orders, found);
      --orders[i];
    }
  }
}

std::optional<Expr> lookup(std::string_view name, const Context& ctx, std::string& why) {
  if (auto i = ctx.coordinate_index(name)) return Expr::atom(ctx.coordinate(*i));
  if (ctx.is_parameter(name)) return Expr::atom(parameter_atom(name));
  if (const auto* args = ctx.function_args(name))
    return jet(std::string(name), *args, std::vector<std::uint16_t>(args->size(), 0));
  for (std::size_t cut = name.find('_'); cut != std::string_view::npos; cut = name.find('_', cut + 1)) {
    const auto* args = ctx.function_args(name.substr(0, cut));
    if (!args) continue;
    std::vector<std::uint16_t> orders(args->size(), 0);
    std::set<std::vector<std::uint16_t>> found;
    split_suffix(name.substr(cut + 1), *args, orders, found);
    if (found.size() > 1) {
      why = "ambiguous jet '" + std::string(name) + "'";
      return std::nullopt;
    }
    if (found.size() == 1) return jet(std::string(name.substr(0, cut)), *args, *found.begin());
  }
  why = "undeclared identifier '" + std::string(name) + "'";
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view src, const Context& ctx, const Bindings* bindings)
      : src_(src), ctx_(ctx), bindings_(bindings) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != src_.size()) fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg, std::optional<std::size_t> at = {}) {
    throw ParseError(kind, at.value_or(pos_), msg);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(ParseError::Kind::syntax, std::string("expected '") + c + "'");
  }

  template <class F>
  Expr guarded(std::size_t at, F&& f) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const TermLimitExceeded&) {
      throw;
    } catch (const ExprError& e) {
      fail(ParseError::Kind::division_by_zero, e.what(), at);
    }
  }

  Expr expr() {
    Expr acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        skip();
        std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) {
          bool literal = at < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at]));
          fail(literal ? ParseError::Kind::zero_denominator : ParseError::Kind::division_by_zero,
               "division by zero", at);
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (!accept('^')) return b;
    skip();
    std::size_t at = pos_;
    bool negative = accept('-');
    skip();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail(ParseError::Kind::non_integer_exponent, "exponent must be an integer literal", at);
    mpz_class n = integer();
    if (peek('.')) fail(ParseError::Kind::non_integer_exponent, "exponent must be an integer literal", at);
    if (!n.fits_slong_p() || n > 100000) fail(ParseError::Kind::syntax, "exponent too large", at);
    long e = n.get_si();
    return guarded(at, [&] { return b.pow(negative ? -e : e); });
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  Expr base() {
    skip();
    if (pos_ >= src_.size()) fail(ParseError::Kind::syntax, "unexpected end of input");
    unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (std::isdigit(c)) {
      mpz_class n = integer();
      if (pos_ < src_.size() && src_[pos_] == '.') fail(ParseError::Kind::syntax, "decimal literals are not supported");
      return Expr(mpq_class(n));
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (ident_start(c)) {
      std::size_t at = pos_;
      std::string name = identifier();
      if (name == "diff" && peek('(')) return diff();
      if (bindings_) {
        auto it = bindings_->find(name);
        if (it != bindings_->end()) return it->second;
      }
      std::string why;
      if (auto e = lookup(name, ctx_, why)) return *e;
      fail(ParseError::Kind::undeclared_identifier, why, at);
    }
    fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, src_[pos_]) + "'");
  }

  Expr diff() {
    expect('(');
    skip();
    std::size_t fat = pos_;
    std::string fname = identifier();
    if (fname.empty()) fail(ParseError::Kind::syntax, "expected a function name");
    const auto* args = ctx_.function_args(fname);
    if (!args) fail(ParseError::Kind::undeclared_identifier, "'" + fname + "' is not a declared function", fat);
    std::vector<std::uint16_t> orders(args->size(), 0);
    if (!peek(',')) fail(ParseError::Kind::syntax, "diff needs at least one coordinate");
    bool vanishes = false;
    while (accept(',')) {
      skip();
      std::size_t vat = pos_;
      std::string v = identifier();
      if (v.empty()) fail(ParseError::Kind::syntax, "expected a coordinate name");
      bool hit = false;
      for (std::size_t i = 0; i < args->size(); ++i) {
        if ((*args)[i] == v) {
          ++orders[i];
          hit = true;
        }
      }
      if (!hit) {
        if (!ctx_.coordinate_index(v))
          fail(ParseError::Kind::undeclared_identifier, "'" + v + "' is not a coordinate", vat);
        vanishes = true;  // f does not depend on v
      }
    }
    expect(')');
    if (vanishes) return Expr();
    return jet(fname, *args, orders);
  }

  std::string_view src_;
  const Context& ctx_;
  const Bindings* bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : ExprError(std::string(kind_label(kind)) + " at position " + std::to_string(position) + ": " + message),
      kind(kind),
      position(position) {}

Expr parse(std::string_view source, const Context& ctx, const Bindings* bindings) {
  return Parser(source, ctx, bindings).run();
}

Expr resolve_identifier(std::string_view name, const Context& ctx) {
  std::string why;
  if (auto e = lookup(name, ctx, why)) return *e;
  throw ParseError(ParseError::Kind::undeclared_identifier, 0, why);
}

}  // namespace rtcalc
