#pragma once

#include <random>

#include "rtcalc/geometry.hpp"

#include "rtcalc/parse.hpp"
#include "rtcalc/rt.hpp"

namespace testing_support {

inline const rtcalc::Context& rt_context() { return *rtcalc::rt_context(); }

inline rtcalc::Expr P(std::string_view s) { return rtcalc::parse(s, rt_context()); }

inline rtcalc::AtomId atom(std::string_view name) { return rtcalc::mono_atom(P(name).num().leading().mono[0]); }

/// Random symmetric (0,2) tensor on the RT chart with small polynomial entries.
inline rtcalc::Tensor random_symmetric(std::mt19937& rng) {
  static const char* pieces[] = {"r", "x", "y", "a", "f", "f_x", "r*f_y", "x*y", "b*r^2"};
  std::uniform_int_distribution<int> pick(0, 8), coef(-3, 3);
  rtcalc::Tensor t(rtcalc::rt_context(), 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      rtcalc::Expr e(coef(rng));
      e += rtcalc::Expr(coef(rng)) * P(pieces[pick(rng)]);
      t(i, j) = t(j, i) = e;
    }
  return t;
}

/// Random expression trees over a small atom set, kept modest in size.
class TreeGen {
 public:
  explicit TreeGen(unsigned seed) : rng_(seed) {}

  rtcalc::Expr leaf() {
    static const char* names[] = {"r", "x", "y", "a", "d", "f", "f_x", "f_y", "f_xy"};
    int k = pick(0, 11);
    if (k < 9) return P(names[k]);
    return rtcalc::Expr(pick(-4, 4));
  }

  rtcalc::Expr tree(int depth) {
    if (depth == 0) return leaf();
    switch (pick(0, 4)) {
      case 0: return tree(depth - 1) + tree(depth - 1);
      case 1: return tree(depth - 1) - tree(depth - 1);
      case 2: return tree(depth - 1) * tree(depth - 1);
      case 3: {
        rtcalc::Expr d = tree(depth - 1);
        if (d.is_zero()) d = rtcalc::Expr(3);
        return tree(depth - 1) / d;
      }
      default: {
        rtcalc::Expr b = tree(depth - 1);
        return b.pow(b.is_zero() ? 2 : pick(-1, 2));
      }
    }
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937 rng_;
};

}  // namespace testing_support
