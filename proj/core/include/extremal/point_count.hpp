#pragma once

#include <cstdint>

#include "extremal/curves.hpp"

namespace extremal {

/// Naive counting below this bound, baby-step/giant-step at or above it.
inline constexpr u64 kNaiveCrossover = u64{1} << 14;

struct FrobeniusTrace {
  u64 p;
  i64 a_p;
};

/// floor(sqrt(n)), integer arithmetic only.
u64 isqrt(u64 n);

/// [2 sqrt(p)], the largest trace the Hasse bound allows.
inline u64 hasse_width(u64 p) { return isqrt(4 * p); }

/// #E(F_p) = 1 + sum_x (1 + (x^3+Ax+B / p)). Uses a quadratic-residue bitmap
/// for p < kNaiveCrossover and Euler's criterion above.
u64 count_points_naive(const ReducedCurve& curve);

/// Outcome of the group-order search, kept separate so callers can see
/// whether the order was pinned without falling back to enumeration.
struct BsgsResult {
  u64 order = 0;
  bool pinned = false;   // false: the Hasse interval still held several candidates
  int points_used = 0;
};

/// #E(F_p) from orders of points on E and its quadratic twist inside the
/// Hasse interval. Never guesses: `pinned` is false if the candidates could
/// not be narrowed to one within the point budget.
BsgsResult count_points_bsgs(const ReducedCurve& curve, int max_points = 64);

/// a_p for p > 3 of good reduction. Naive below the crossover, BSGS above;
/// an unpinned BSGS result falls back to naive counting when p is small
/// enough and throws AmbiguousOrder otherwise.
FrobeniusTrace trace_of_frobenius(const CurveQ& curve, u64 p);

/// Same dispatch on an already-reduced curve (p must be an odd prime).
i64 trace_of_frobenius(const ReducedCurve& curve);

}  // namespace extremal
