#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>

#include "paradox/core.hpp"

namespace paradox::detail {

using u128 = unsigned __int128;

// Largest odd value whose 3v + 1 still fits in 128 bits.
inline constexpr u128 kU128OddLimit = (std::numeric_limits<u128>::max() - 1) / 3;

inline bool is_odd(u128 v) { return (v & 1) != 0; }
inline bool is_odd(const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

inline mpz_class to_natural(u128 v) {
  mpz_class out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

// Largest q with 3^q < 2^e, or -1 when e == 0. Exact for every e: a table
// built from the bit lengths of 3^q covers the range seen by real walks,
// larger e go through floor_log_ratio.
std::int64_t max_odd_below(std::uint64_t e);

struct WalkPos {
  std::uint64_t steps = 0;
  std::uint64_t q = 0;  // odd iterates consumed
  std::uint64_t e = 0;  // halvings performed
};

enum class WalkEnd { ReachedOne, Overflow, Budget };

// Runs the map from v until it reaches 1, calling emit(pos, v) after each
// step whose prefix is paradoxical relative to start. With the 128-bit
// type the walk stops before an overflowing odd step and leaves v and pos
// at the last valid state so an unbounded walk can pick up from there.
template <typename Int, typename Emit>
WalkEnd walk_paradoxes(Int& v, const Int& start, WalkPos& pos, Formalism f,
                       std::uint64_t budget, Emit&& emit) {
  while (v != 1) {
    if (pos.steps >= budget) return WalkEnd::Budget;
    if (is_odd(v)) {
      if constexpr (std::is_same_v<Int, u128>) {
        if (v > kU128OddLimit) return WalkEnd::Overflow;
      }
      v = 3 * v + 1;
      ++pos.q;
      if (f == Formalism::Shortcut) {
        v >>= 1;
        ++pos.e;
      }
    } else {
      v >>= 1;
      ++pos.e;
    }
    ++pos.steps;
    if (v >= start && static_cast<std::int64_t>(pos.q) <= max_odd_below(pos.e)) emit(pos, v);
  }
  return WalkEnd::ReachedOne;
}

}  // namespace paradox::detail
