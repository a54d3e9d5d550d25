// Multivariate gcd over Z[atoms].
//
// Strategy: strip integer and monomial contents, then reduce the number of
// variables as far as possible before falling back to a primitive PRS.
// Variables present in only one operand cannot occur in the gcd, and a
// modular image gives a rigorous upper bound on the gcd degree in each
// shared variable: if lc_v(A) does not vanish at the evaluation point, every
// common divisor keeps its v-degree in the image. A zero bound again lets the
// gcd be taken over the coefficients in that variable.

#include <algorithm>
#include <random>
#include <unordered_map>

#include "rtcalc/poly.hpp"

namespace rtcalc {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::mt19937_64& rng() {
  static std::mt19937_64 eng(0x9e3779b97f4a7c15ull);
  return eng;
}

using UPoly = std::vector<std::uint64_t>;  // dense, index = degree

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly image(const Poly& p, AtomId v, const std::unordered_map<AtomId, std::uint64_t>& point) {
  UPoly out(p.degree_in(v) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coef.get_mpz_t(), kPrime);
    unsigned ev = 0;
    for (auto packed : t.mono) {
      AtomId a = mono_atom(packed);
      if (a == v) {
        ev = mono_exp(packed);
      } else {
        c = mulmod(c, powmod(point.at(a), mono_exp(packed)));
      }
    }
    out[ev] = addmod(out[ev], c);
  }
  trim(out);
  return out;
}

std::size_t univariate_gcd_degree(UPoly a, UPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(q, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

unsigned degree_bound(const Poly& a, const Poly& b, AtomId v, const std::vector<AtomId>& atoms) {
  unsigned da = a.degree_in(v), db = b.degree_in(v);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::unordered_map<AtomId, std::uint64_t> point;
    for (AtomId x : atoms)
      if (x != v) point[x] = rng()() % (kPrime - 1) + 1;
    UPoly ia = image(a, v, point);
    if (ia.size() != da + 1) continue;
    UPoly ib = image(b, v, point);
    return static_cast<unsigned>(univariate_gcd_degree(std::move(ia), std::move(ib)));
  }
  return std::min(da, db);
}

Poly normalize_sign(Poly p) {
  if (!p.is_zero() && p.leading().coef < 0) return -p;
  return p;
}

Poly divide_monomial(const Poly& p, const Monomial& m) {
  if (m.empty()) return p;
  std::vector<Poly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({mono_div(t.mono, m), t.coef});
  return Poly::from_terms(std::move(out));
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly gcd_many(std::vector<Poly> polys) {
  std::sort(polys.begin(), polys.end(),
            [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
  Poly g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? normalize_sign(p) : gcd_impl(g, p);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_part_in(const Poly& p, AtomId v) {
  Poly c = gcd_many(p.coefficients_in(v));
  return normalize_sign(*p.divide_exact(c));
}

Poly prs_gcd(const Poly& a, const Poly& b, AtomId v) {
  Poly ca = gcd_many(a.coefficients_in(v));
  Poly cb = gcd_many(b.coefficients_in(v));
  Poly content = gcd_impl(ca, cb);
  Poly pa = *a.divide_exact(ca);
  Poly pb = *b.divide_exact(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Poly g;
  while (true) {
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, v);
  }
  if (!g.is_one()) g = primitive_part_in(g, v);
  return normalize_sign(content * g);
}

// Both arguments primitive, free of monomial content and non-zero.
Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b || a == -b) return normalize_sign(a);

  std::vector<AtomId> va = a.atoms(), vb = b.atoms();
  for (AtomId v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) {
      std::vector<Poly> list = a.coefficients_in(v);
      list.push_back(b);
      return gcd_many(std::move(list));
    }
  }
  for (AtomId v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) {
      std::vector<Poly> list = b.coefficients_in(v);
      list.push_back(a);
      return gcd_many(std::move(list));
    }
  }

  std::vector<unsigned> bounds;
  bounds.reserve(va.size());
  for (AtomId v : va) {
    unsigned bd = degree_bound(a, b, v, va);
    if (bd == 0) {
      std::vector<Poly> list = a.coefficients_in(v);
      for (auto& c : b.coefficients_in(v)) list.push_back(std::move(c));
      return gcd_many(std::move(list));
    }
    bounds.push_back(bd);
  }

  bool b_candidate = true, a_candidate = true;
  for (std::size_t k = 0; k < va.size(); ++k) {
    b_candidate = b_candidate && bounds[k] == b.degree_in(va[k]);
    a_candidate = a_candidate && bounds[k] == a.degree_in(va[k]);
  }
  if (b_candidate && b.size() <= a.size() && a.divide_exact(b)) return normalize_sign(b);
  if (a_candidate && a.size() <= b.size() && b.divide_exact(a)) return normalize_sign(a);

  std::size_t best = 0;
  for (std::size_t k = 1; k < va.size(); ++k) {
    auto key = [&](std::size_t i) {
      return std::make_pair(bounds[i], std::max(a.degree_in(va[i]), b.degree_in(va[i])));
    };
    if (key(k) < key(best)) best = k;
  }
  return prs_gcd(a, b, va[best]);
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  mpz_class ca = a.integer_content(), cb = b.integer_content();
  mpz_class ic;
  mpz_gcd(ic.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  Monomial mc = mono_gcd(ma, mb);
  if (a.is_constant() || b.is_constant() || (a.size() == 1 || b.size() == 1))
    return Poly::monomial(mc, ic);
  Poly pa = divide_monomial(a, ma), pb = divide_monomial(b, mb);
  if (ca != 1) pa = pa.divide_by_integer(ca);
  if (cb != 1) pb = pb.divide_by_integer(cb);
  Poly g = gcd_primitive(pa, pb);
  return normalize_sign(g * Poly::monomial(mc, ic));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

}  // namespace rtcalc
