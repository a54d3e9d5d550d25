#include "rtcalc/atom.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace rtcalc {

unsigned AtomInfo::total_order() const {
  return std::accumulate(orders.begin(), orders.end(), 0u);
}

namespace {

using AtomKey = std::tuple<int, std::string, std::vector<std::string>, std::vector<std::uint16_t>>;

struct AtomTable {
  std::deque<AtomInfo> atoms;
  std::map<AtomKey, AtomId> index;
  std::vector<std::uint32_t> ranks;

  static bool canonical_less(const AtomInfo& a, const AtomInfo& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.name != b.name) return a.name < b.name;
    if (a.args != b.args) return a.args < b.args;
    unsigned ta = a.total_order(), tb = b.total_order();
    if (ta != tb) return ta < tb;
    // f_xx before f_xy before f_yy
    return a.orders > b.orders;
  }

  AtomId intern(AtomInfo info) {
    AtomKey key{static_cast<int>(info.kind), info.name, info.args, info.orders};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (atoms.size() >= (1u << (32 - kExpBits)))
      throw std::length_error("atom table exhausted");
    AtomId id = static_cast<AtomId>(atoms.size());
    atoms.push_back(std::move(info));
    index.emplace(std::move(key), id);

    std::vector<AtomId> order(atoms.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](AtomId x, AtomId y) { return canonical_less(atoms[x], atoms[y]); });
    ranks.assign(atoms.size(), 0);
    for (std::uint32_t k = 0; k < order.size(); ++k) ranks[order[k]] = k;
    return id;
  }
};

AtomTable& table() {
  static AtomTable t;
  return t;
}

}  // namespace

AtomId coordinate_atom(std::string_view name) {
  return table().intern({AtomKind::coordinate, std::string(name), {}, {}});
}

AtomId parameter_atom(std::string_view name) {
  return table().intern({AtomKind::parameter, std::string(name), {}, {}});
}

AtomId jet_atom(std::string_view function, const std::vector<std::string>& args,
                const std::vector<std::uint16_t>& orders) {
  if (args.size() != orders.size())
    throw std::invalid_argument("jet multi-index does not match the argument list");
  return table().intern({AtomKind::jet, std::string(function), args, orders});
}

const AtomInfo& atom_info(AtomId id) { return table().atoms.at(id); }

std::uint32_t atom_rank(AtomId id) { return table().ranks[id]; }

bool atom_less(AtomId a, AtomId b) { return atom_rank(a) < atom_rank(b); }

std::string atom_name(AtomId id) {
  const AtomInfo& a = atom_info(id);
  if (a.kind != AtomKind::jet || a.total_order() == 0) return a.name;
  bool short_args = std::all_of(a.args.begin(), a.args.end(),
                                [](const std::string& s) { return s.size() == 1; });
  std::string out;
  if (short_args) {
    out = a.name + "_";
    for (std::size_t i = 0; i < a.args.size(); ++i) out.append(a.orders[i], a.args[i][0]);
    return out;
  }
  out = "diff(" + a.name;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    for (unsigned k = 0; k < a.orders[i]; ++k) out += "," + a.args[i];
  return out + ")";
}

bool jet_derivative(AtomId jet, std::string_view coordinate, AtomId& out) {
  const AtomInfo& a = atom_info(jet);
  if (a.kind != AtomKind::jet) return false;
  auto it = std::find(a.args.begin(), a.args.end(), coordinate);
  if (it == a.args.end()) return false;
  std::vector<std::uint16_t> orders = a.orders;
  ++orders[static_cast<std::size_t>(it - a.args.begin())];
  std::string name = a.name;
  std::vector<std::string> args = a.args;
  out = jet_atom(name, args, orders);
  return true;
}

unsigned mono_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto p : m) d += mono_exp(p);
  return d;
}

unsigned mono_degree_in(const Monomial& m, AtomId v) {
  for (auto p : m)
    if (mono_atom(p) == v) return mono_exp(p);
  return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && mono_atom(a[i]) < mono_atom(b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || mono_atom(b[j]) < mono_atom(a[i])) {
      out.push_back(b[j++]);
    } else {
      unsigned e = mono_exp(a[i]) + mono_exp(b[j]);
      if (e > kExpMask) throw std::overflow_error("monomial exponent overflow");
      out.push_back(mono_pack(mono_atom(a[i]), e));
      ++i;
      ++j;
    }
  }
  return out;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (auto p : d) {
    while (j < m.size() && mono_atom(m[j]) < mono_atom(p)) ++j;
    if (j == m.size() || mono_atom(m[j]) != mono_atom(p) || mono_exp(m[j]) < mono_exp(p))
      return false;
  }
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  std::size_t j = 0;
  for (auto p : m) {
    if (j < d.size() && mono_atom(d[j]) == mono_atom(p)) {
      unsigned e = mono_exp(p) - mono_exp(d[j]);
      if (e) out.push_back(mono_pack(mono_atom(p), e));
      ++j;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t j = 0;
  for (auto p : a) {
    while (j < b.size() && mono_atom(b[j]) < mono_atom(p)) ++j;
    if (j < b.size() && mono_atom(b[j]) == mono_atom(p))
      out.push_back(mono_pack(mono_atom(p), std::min(mono_exp(p), mono_exp(b[j]))));
  }
  return out;
}

Monomial mono_without(const Monomial& m, AtomId v) {
  Monomial out;
  for (auto p : m)
    if (mono_atom(p) != v) out.push_back(p);
  return out;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
  unsigned da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] == b[k]) continue;
    AtomId ia = mono_atom(a[k]), ib = mono_atom(b[k]);
    if (ia != ib) return ia < ib ? 1 : -1;  // a has the earlier atom
    return mono_exp(a[k]) < mono_exp(b[k]) ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? 1 : -1;
}

int mono_cmp_canonical(const Monomial& a, const Monomial& b) {
  unsigned da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  using RE = std::pair<std::uint32_t, unsigned>;
  boost::container::small_vector<RE, 8> ra, rb;
  for (auto p : a) ra.emplace_back(atom_rank(mono_atom(p)), mono_exp(p));
  for (auto p : b) rb.emplace_back(atom_rank(mono_atom(p)), mono_exp(p));
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  std::size_t n = std::min(ra.size(), rb.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (ra[k] == rb[k]) continue;
    if (ra[k].first != rb[k].first) return ra[k].first < rb[k].first ? 1 : -1;
    return ra[k].second < rb[k].second ? -1 : 1;
  }
  if (ra.size() == rb.size()) return 0;
  return ra.size() > rb.size() ? 1 : -1;
}

}  // namespace rtcalc
