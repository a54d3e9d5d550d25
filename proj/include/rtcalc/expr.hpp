#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rtcalc/poly.hpp"

namespace rtcalc {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coordinate chart, free constants and opaque functions of a computation.
class Context {
 public:
  using FunctionDecl = std::pair<std::string, std::vector<std::string>>;

  Context(std::vector<std::string> coordinates, std::vector<std::string> parameters,
          std::vector<FunctionDecl> functions);

  std::size_t dimension() const { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::vector<FunctionDecl>& functions() const { return functions_; }

  AtomId coordinate(std::size_t i) const { return coordinate_atoms_.at(i); }
  std::optional<std::size_t> coordinate_index(std::string_view name) const;
  bool is_parameter(std::string_view name) const;
  const std::vector<std::string>* function_args(std::string_view name) const;

  friend bool operator==(const Context& a, const Context& b);

 private:
  std::vector<std::string> coordinates_;
  std::vector<std::string> parameters_;
  std::vector<FunctionDecl> functions_;
  std::vector<AtomId> coordinate_atoms_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// Canonical rational function num/den over Z[atoms].
///
/// Invariants: den != 0, gcd(num, den) = 1 over Z (integer contents
/// included), and the canonical leading coefficient of den is positive.
/// Two Exprs are equal iff their (num, den) pairs are identical.
class Expr {
 public:
  Expr();
  Expr(long value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpq_class& value);
  static Expr atom(AtomId id);
  static Expr fraction(Poly num, Poly den);

  const Poly& num() const { return rep_->num; }
  const Poly& den() const { return rep_->den; }

  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_constant() const { return rep_->num.is_constant() && rep_->den.is_constant(); }
  mpq_class constant_value() const;  // requires is_constant()
  std::vector<AtomId> atoms() const;
  bool contains(AtomId v) const;
  std::size_t term_count() const { return rep_->num.size() + rep_->den.size(); }

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }
  Expr pow(long exponent) const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Canonical text; parse(str()) reproduces the same Expr.
  std::string str() const;

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  explicit Expr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Expr reduced(Poly num, Poly den);  // inputs already coprime
  std::shared_ptr<const Rep> rep_;
};

enum class ArithOp { add, sub, mul, div, pow, neg };
/// Dispatching form of the arithmetic operators; `pow` takes an integer rhs.
Expr arith(ArithOp op, const Expr& lhs, const Expr& rhs);

Expr differentiate(const Expr& e, AtomId coordinate);
Expr differentiate(const Expr& e, const Context& ctx, std::string_view coordinate);

using Assignment = std::map<AtomId, mpq_class>;

struct UnassignedAtom : ExprError {
  using ExprError::ExprError;
};
struct ZeroDenominator : ExprError {
  using ExprError::ExprError;
};

mpq_class eval_numeric(const Poly& p, const Assignment& values);
mpq_class eval_numeric(const Expr& e, const Assignment& values);

/// Replace every occurrence of atom v by `value`.
Expr substitute(const Expr& e, AtomId v, const Expr& value);

/// Expression text of a polynomial in canonical term order.
std::string poly_str(const Poly& p);

}  // namespace rtcalc
