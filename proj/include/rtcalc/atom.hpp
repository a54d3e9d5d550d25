#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rtcalc {

using AtomId = std::uint32_t;

enum class AtomKind : std::uint8_t { coordinate, parameter, jet };

/// A symbol of the expression language.
///
/// Jets carry the opaque function name, its declared argument list and the
/// number of derivatives taken along each argument. Because the derivative
/// counts are stored per argument, f_xy and f_yx are the same atom.
struct AtomInfo {
  AtomKind kind;
  std::string name;
  std::vector<std::string> args;
  std::vector<std::uint16_t> orders;

  unsigned total_order() const;
};

// The atom table is process-global and append-only. Interning is not
// synchronised: construct expressions from one thread at a time. Finished
// Expr values are immutable and may be shared freely.
AtomId coordinate_atom(std::string_view name);
AtomId parameter_atom(std::string_view name);
AtomId jet_atom(std::string_view function, const std::vector<std::string>& args,
                const std::vector<std::uint16_t>& orders);

const AtomInfo& atom_info(AtomId id);

/// Position of the atom in the canonical order: coordinates, then parameters,
/// then jets (by function name, then total order, then multi-index with
/// earlier arguments first). Names compare bytewise.
std::uint32_t atom_rank(AtomId id);
bool atom_less(AtomId a, AtomId b);

/// Printable name; jets use the underscore form (f_xxy) when every argument
/// name is a single character and the diff(f,x,x,y) form otherwise.
std::string atom_name(AtomId id);

/// The jet obtained by one more derivative along `coordinate`, or nothing
/// when the atom does not depend on that coordinate.
bool jet_derivative(AtomId jet, std::string_view coordinate, AtomId& out);

/// Packed monomial: sorted by atom id, each entry (id << kExpBits) | exponent.
constexpr unsigned kExpBits = 12;
constexpr std::uint32_t kExpMask = (1u << kExpBits) - 1;

using Monomial = boost::container::small_vector<std::uint32_t, 6>;

inline AtomId mono_atom(std::uint32_t packed) { return packed >> kExpBits; }
inline unsigned mono_exp(std::uint32_t packed) { return packed & kExpMask; }
inline std::uint32_t mono_pack(AtomId id, unsigned e) { return (id << kExpBits) | e; }

unsigned mono_degree(const Monomial& m);
unsigned mono_degree_in(const Monomial& m, AtomId v);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& d, const Monomial& m);
Monomial mono_div(const Monomial& m, const Monomial& d);
Monomial mono_gcd(const Monomial& a, const Monomial& b);
Monomial mono_without(const Monomial& m, AtomId v);

/// Graded lexicographic order on atom ids (the storage order inside Poly).
int mono_cmp(const Monomial& a, const Monomial& b);
/// Graded lexicographic order on canonical atom ranks (printing and sign
/// normalisation).
int mono_cmp_canonical(const Monomial& a, const Monomial& b);

}  // namespace rtcalc
