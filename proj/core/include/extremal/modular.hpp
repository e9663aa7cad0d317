#pragma once

#include <cstdint>

namespace extremal {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exp, u64 m);

// Inverse of a modulo m; a must be a unit.
u64 inv_mod(u64 a, u64 m);

// Nonnegative residue of a signed 128-bit value.
u64 reduce_signed(i128 a, u64 m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

// Legendre symbol (a/p) for an odd prime p via Euler's criterion: -1, 0 or 1.
int legendre(u64 a, u64 p);

// A square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
u64 sqrt_mod(u64 a, u64 p);

}  // namespace extremal
