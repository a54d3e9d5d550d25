#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "rtcalc/expr.hpp"

namespace rtcalc {

struct ParseError : ExprError {
  enum class Kind { syntax, undeclared_identifier, zero_denominator, non_integer_exponent, division_by_zero };
  ParseError(Kind kind, std::size_t position, const std::string& message);
  Kind kind;
  std::size_t position;  // byte offset into the source
};

/// Named sub-expressions that identifiers may refer to (F1, F4, ...).
using Bindings = std::map<std::string, Expr, std::less<>>;

/// Parse an expression over the symbols of `ctx`.
///
///   expr     := term (("+"|"-") term)*
///   term     := factor (("*"|"/") factor)*
///   factor   := base ("^" ["-"] integer)?
///   base     := integer | identifier | "(" expr ")" | "-" factor
///             | "diff(" identifier ("," identifier)+ ")"
///
/// A literal p/q is read as integer division, so 2/3^2 is 2/9. Jets may be
/// written f_xy when the suffix splits into argument names in only one way.
Expr parse(std::string_view source, const Context& ctx, const Bindings* bindings = nullptr);

/// Resolve a single identifier (coordinate, parameter, function or jet).
Expr resolve_identifier(std::string_view name, const Context& ctx);

}  // namespace rtcalc
