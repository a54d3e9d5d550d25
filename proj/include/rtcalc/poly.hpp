#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "rtcalc/atom.hpp"

namespace rtcalc {

/// Cap on the number of terms any polynomial may reach. Exceeding it raises
/// TermLimitExceeded instead of grinding on.
std::size_t max_terms();
void set_max_terms(std::size_t cap);

struct TermLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept sorted in descending mono_cmp order with no zero
/// coefficients, so structural equality is polynomial equality.
class Poly {
 public:
  struct Term {
    Monomial mono;
    mpz_class coef;
  };

  Poly() = default;
  explicit Poly(const mpz_class& c);
  explicit Poly(long c) : Poly(mpz_class(c)) {}
  static Poly atom(AtomId id, unsigned exponent = 1);
  static Poly monomial(Monomial m, mpz_class c);
  static Poly from_terms(std::vector<Term> terms);  // any order, duplicates merged

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }
  bool is_one() const;
  mpz_class constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }

  unsigned degree() const;
  unsigned degree_in(AtomId v) const;
  std::vector<AtomId> atoms() const;  // sorted by id
  bool contains(AtomId v) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly pow(unsigned e) const;
  Poly scaled(const mpz_class& c) const;
  Poly times_monomial(const Monomial& m) const;

  /// Quotient if `d` divides *this exactly over the integers.
  std::optional<Poly> divide_exact(const Poly& d) const;
  Poly divide_by_integer(const mpz_class& c) const;  // exact

  /// Coefficients of the powers of v: result[k] multiplies v^k.
  std::vector<Poly> coefficients_in(AtomId v) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, AtomId v);

  mpz_class integer_content() const;  // non-negative gcd of the coefficients
  Monomial monomial_content() const;

  /// Leading coefficient under the canonical (rank based) order.
  const mpz_class& canonical_leading_coefficient() const;
  /// Terms sorted in descending canonical order, for printing.
  std::vector<const Term*> canonical_terms() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  std::vector<Term> terms_;
};

/// gcd over Z[atoms]; the result has a positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

/// Pseudo-remainder of a by b viewed as polynomials in v.
Poly pseudo_remainder(const Poly& a, const Poly& b, AtomId v);

}  // namespace rtcalc
