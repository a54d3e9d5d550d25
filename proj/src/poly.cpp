#include "rtcalc/poly.hpp"

#include <algorithm>
#include <string>

namespace rtcalc {

namespace {
std::size_t g_max_terms = 200000;

void check_size(std::size_t n) {
  if (n > g_max_terms)
    throw TermLimitExceeded("polynomial exceeds the term cap (" + std::to_string(g_max_terms) +
                            " terms)");
}
}  // namespace

std::size_t max_terms() { return g_max_terms; }
void set_max_terms(std::size_t cap) { g_max_terms = cap; }

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::atom(AtomId id, unsigned exponent) {
  if (exponent == 0) return Poly(1);
  Poly p;
  p.terms_.push_back({Monomial{mono_pack(id, exponent)}, mpz_class(1)});
  return p;
}

Poly Poly::monomial(Monomial m, mpz_class c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return mono_cmp(x.mono, y.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  check_size(p.terms_.size());
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coef == 1;
}

mpz_class Poly::constant_value() const { return terms_.empty() ? mpz_class(0) : terms_[0].coef; }

unsigned Poly::degree() const { return terms_.empty() ? 0 : mono_degree(terms_.front().mono); }

unsigned Poly::degree_in(AtomId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, mono_degree_in(t.mono, v));
  return d;
}

std::vector<AtomId> Poly::atoms() const {
  std::vector<AtomId> out;
  for (const auto& t : terms_)
    for (auto p : t.mono) out.push_back(mono_atom(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Poly::contains(AtomId v) const {
  for (const auto& t : terms_)
    if (mono_degree_in(t.mono, v)) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {
template <bool Subtract>
std::vector<Poly::Term> merge_add(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = mono_cmp(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if constexpr (Subtract) out.back().coef = -out.back().coef;
    } else {
      mpz_class s = Subtract ? mpz_class(a[i].coef - b[j].coef) : mpz_class(a[i].coef + b[j].coef);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if constexpr (Subtract) out.back().coef = -out.back().coef;
  }
  check_size(out.size());
  return out;
}

std::vector<Poly::Term> merge_move(std::vector<Poly::Term>&& a, std::vector<Poly::Term>&& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = mono_cmp(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(std::move(a[i++]));
    } else if (c < 0) {
      out.push_back(std::move(b[j++]));
    } else {
      a[i].coef += b[j].coef;
      if (a[i].coef != 0) out.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
  for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
  check_size(out.size());
  return out;
}
}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly p;
  p.terms_ = merge_add<false>(a.terms_, b.terms_);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  Poly p;
  p.terms_ = merge_add<true>(a.terms_, b.terms_);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.size() == 1 && a.terms_[0].mono.empty()) return b.scaled(a.terms_[0].coef);
  if (b.size() == 1 && b.terms_[0].mono.empty()) return a.scaled(b.terms_[0].coef);
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  // Each row small_i * large is already sorted; merge rows pairwise.
  std::vector<std::vector<Poly::Term>> rows;
  rows.reserve(small.size());
  for (const auto& x : small.terms_) {
    std::vector<Poly::Term> row;
    row.reserve(large.size());
    for (const auto& y : large.terms_) row.push_back({mono_mul(x.mono, y.mono), x.coef * y.coef});
    rows.push_back(std::move(row));
  }
  while (rows.size() > 1) {
    std::vector<std::vector<Poly::Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge_move(std::move(rows[i]), std::move(rows[i + 1])));
    if (rows.size() % 2) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  Poly p;
  p.terms_ = std::move(rows.front());
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m) const {
  if (m.empty()) return *this;
  Poly p;
  p.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves the graded lex order
  for (const auto& t : terms_) p.terms_.push_back({mono_mul(t.mono, m), t.coef});
  return p;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Poly();
  if (d.is_one()) return *this;
  if (d.is_constant()) {
    for (const auto& t : terms_)
      if (!mpz_divisible_p(t.coef.get_mpz_t(), d.terms_[0].coef.get_mpz_t())) return std::nullopt;
    return divide_by_integer(d.terms_[0].coef);
  }
  if (d.degree() > degree()) return std::nullopt;
  for (AtomId v : d.atoms())
    if (d.degree_in(v) > degree_in(v)) return std::nullopt;

  // Heap division: stream i yields d_i * q_k for k = 0, 1, ...; a stream
  // waiting for a quotient term not yet known is parked until it appears.
  const auto& dt = d.terms_;
  const Term& lead = dt.front();
  struct Entry {
    Monomial mono;
    std::size_t i, k;
  };
  auto later = [](const Entry& x, const Entry& y) { return mono_cmp(x.mono, y.mono) < 0; };
  std::vector<Entry> heap;
  std::vector<std::size_t> parked;
  for (std::size_t i = 1; i < dt.size(); ++i) parked.push_back(i);
  std::vector<Term> q;
  std::size_t ai = 0;
  mpz_class c, prod;
  while (ai < terms_.size() || !heap.empty()) {
    const Monomial* m;
    if (heap.empty() || (ai < terms_.size() && mono_cmp(terms_[ai].mono, heap.front().mono) >= 0))
      m = &terms_[ai].mono;
    else
      m = &heap.front().mono;
    Monomial cur = *m;
    c = 0;
    if (ai < terms_.size() && terms_[ai].mono == cur) c = terms_[ai++].coef;
    while (!heap.empty() && heap.front().mono == cur) {
      std::pop_heap(heap.begin(), heap.end(), later);
      Entry e = std::move(heap.back());
      heap.pop_back();
      mpz_mul(prod.get_mpz_t(), dt[e.i].coef.get_mpz_t(), q[e.k].coef.get_mpz_t());
      c -= prod;
      if (e.k + 1 < q.size()) {
        heap.push_back({mono_mul(dt[e.i].mono, q[e.k + 1].mono), e.i, e.k + 1});
        std::push_heap(heap.begin(), heap.end(), later);
      } else {
        parked.push_back(e.i);
      }
    }
    if (c == 0) continue;
    if (!mono_divides(lead.mono, cur)) return std::nullopt;
    if (!mpz_divisible_p(c.get_mpz_t(), lead.coef.get_mpz_t())) return std::nullopt;
    q.push_back({mono_div(cur, lead.mono), mpz_class(c / lead.coef)});
    check_size(q.size());
    for (std::size_t i : parked) {
      heap.push_back({mono_mul(dt[i].mono, q.back().mono), i, q.size() - 1});
      std::push_heap(heap.begin(), heap.end(), later);
    }
    parked.clear();
  }
  Poly out;
  out.terms_ = std::move(q);
  return out;
}

Poly Poly::divide_by_integer(const mpz_class& c) const {
  Poly p = *this;
  for (auto& t : p.terms_) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
  return p;
}

std::vector<Poly> Poly::coefficients_in(AtomId v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    unsigned e = mono_degree_in(t.mono, v);
    buckets[e].push_back({e ? mono_without(t.mono, v) : t.mono, t.coef});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, AtomId v) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial vk = k ? Monomial{mono_pack(v, static_cast<unsigned>(k))} : Monomial{};
    for (const auto& t : coeffs[k].terms_) out.push_back({mono_mul(t.mono, vk), t.coef});
  }
  return Poly::from_terms(std::move(out));
}

mpz_class Poly::integer_content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    if (m.empty()) break;
    m = mono_gcd(m, t.mono);
  }
  return m;
}

const mpz_class& Poly::canonical_leading_coefficient() const {
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (mono_cmp_canonical(t.mono, best->mono) > 0) best = &t;
  return best->coef;
}

std::vector<const Poly::Term*> Poly::canonical_terms() const {
  std::vector<const Term*> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(&t);
  std::sort(out.begin(), out.end(),
            [](const Term* x, const Term* y) { return mono_cmp_canonical(x->mono, y->mono) > 0; });
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coef != b.terms_[i].coef || a.terms_[i].mono != b.terms_[i].mono) return false;
  return true;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, AtomId v) {
  unsigned db = b.degree_in(v);
  std::vector<Poly> bc = b.coefficients_in(v);
  const Poly& lcb = bc.back();
  Poly r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(v);
    if (dr < db) break;
    std::vector<Poly> rc = r.coefficients_in(v);
    Poly shift = b.times_monomial(dr > db ? Monomial{mono_pack(v, dr - db)} : Monomial{});
    r = r * lcb - rc.back() * shift;
  }
  return r;
}

}  // namespace rtcalc
