#include <doctest.h>

#include <random>

#include "extremal/errors.hpp"
#include "extremal/modular.hpp"
#include "extremal/point_count.hpp"
#include "extremal/prime_scan.hpp"

using namespace extremal;

namespace {

// Affine point arithmetic kept separate from the library, used to check that
// p + 1 - a_p annihilates random points.
struct Pt {
  u64 x, y;
  bool inf;
};

Pt add(const Pt& P, const Pt& Q, const ReducedCurve& E) {
  const u64 p = E.p;
  if (P.inf) return Q;
  if (Q.inf) return P;
  u64 lambda;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return {0, 0, true};
    const u64 num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p), p), E.a, p);
    lambda = mul_mod(num, inv_mod(mul_mod(2, P.y, p), p), p);
  } else {
    lambda = mul_mod(sub_mod(Q.y, P.y, p), inv_mod(sub_mod(Q.x, P.x, p), p), p);
  }
  const u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), P.x, p), Q.x, p);
  const u64 y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p), p), P.y, p);
  return {x3, y3, false};
}

Pt mul(u64 k, Pt P, const ReducedCurve& E) {
  Pt R{0, 0, true};
  while (k) {
    if (k & 1) R = add(R, P, E);
    P = add(P, P, E);
    k >>= 1;
  }
  return R;
}

Pt random_point(const ReducedCurve& E, std::mt19937_64& rng) {
  for (;;) {
    const u64 x = rng() % E.p;
    const u64 rhs = add_mod(add_mod(mul_mod(mul_mod(x, x, E.p), x, E.p), mul_mod(E.a, x, E.p), E.p), E.b, E.p);
    if (rhs == 0) return {x, 0, false};
    if (legendre(rhs, E.p) == 1) return {x, sqrt_mod(rhs, E.p), false};
  }
}

}  // namespace

TEST_SUITE("point_count") {
  TEST_CASE("modular helpers") {
    CHECK(pow_mod(3, 200, 1000003) == pow_mod(9, 100, 1000003));
    CHECK(inv_mod(3, 7) == 5);
    CHECK(is_prime(2));
    CHECK(is_prime(1000000007));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(18446744073709551557ULL));
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    const u64 r = sqrt_mod(2, 1000000007);
    CHECK(mul_mod(r, r, 1000000007) == 2);
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(24) == 4);
    CHECK(isqrt(25) == 5);
    CHECK(isqrt(~u64{0}) == 4294967295ULL);
  }

  TEST_CASE("naive counts") {
    CHECK(count_points_naive({5, 1, 1}) == 9);
    CHECK(count_points_naive({7, 6, 0}) == 8);
    CHECK(count_points_naive({5, 0, 1}) == 6);
  }

  TEST_CASE("frozen traces") {
    const CurveQ e(1, 1), cm(-1, 0);
    CHECK(trace_of_frobenius(e, 5).a_p == -3);
    CHECK(trace_of_frobenius(e, 4999).a_p == -9);
    CHECK(trace_of_frobenius(e, 16381).a_p == -118);
    CHECK(trace_of_frobenius(e, 16411).a_p == -188);
    CHECK(trace_of_frobenius(e, 100003).a_p == -177);
    CHECK(trace_of_frobenius(e, 999983).a_p == -700);
    CHECK(trace_of_frobenius(cm, 16381).a_p == 182);
    CHECK(trace_of_frobenius(cm, 16411).a_p == 0);
    CHECK(trace_of_frobenius(cm, 100003).a_p == 0);
    CHECK(trace_of_frobenius(cm, 999983).a_p == 0);
  }

  TEST_CASE("supersingular CM primes have zero trace") {
    // y^2 = x^3 - x is supersingular exactly at p = 3 mod 4.
    const CurveQ cm(-1, 0);
    for (u64 p : primes_in_range(20000, 40000))
      if (p % 4 == 3) REQUIRE(trace_of_frobenius(cm, p).a_p == 0);
  }

  TEST_CASE("BSGS equals naive around the crossover") {
    std::mt19937_64 rng(7);
    for (int c = 0; c < 6; ++c) {
      const i64 a = static_cast<i64>(rng() % 201) - 100, b = static_cast<i64>(rng() % 201) - 100;
      if (discriminant(a, b) == 0) continue;
      const CurveQ e(a, b);
      for (u64 p : primes_in_range(kNaiveCrossover - 300, kNaiveCrossover + 300)) {
        if (e.divides_disc(p)) continue;
        const auto r = reduce_mod_p(e, p);
        const auto bsgs = count_points_bsgs(r);
        REQUIRE(bsgs.pinned);
        REQUIRE(bsgs.order == count_points_naive(r));
      }
    }
  }

  TEST_CASE("group order annihilates random points at large p") {
    std::mt19937_64 rng(11);
    const u64 primes[] = {1000000007ULL, 998244353ULL, 4294967311ULL, 1099511627791ULL, 281474976710677ULL};
    for (u64 p : primes) {
      REQUIRE(is_prime(p));
      for (int c = 0; c < 4; ++c) {
        const i64 a = static_cast<i64>(rng() % 2001) - 1000, b = static_cast<i64>(rng() % 2001) - 1000;
        if (discriminant(a, b) == 0) continue;
        const CurveQ e(a, b);
        if (e.divides_disc(p)) continue;
        const auto r = reduce_mod_p(e, p);
        const i64 ap = trace_of_frobenius(e, p).a_p;
        CHECK(static_cast<u128>(ap < 0 ? -ap : ap) * static_cast<u128>(ap < 0 ? -ap : ap) <= u128{4} * p);
        const u64 order = static_cast<u64>(static_cast<i64>(p + 1) - ap);
        for (int k = 0; k < 3; ++k) CHECK(mul(order, random_point(r, rng), r).inf);
      }
    }
  }

  TEST_CASE("trace errors") {
    const CurveQ e(1, 1);
    CHECK_THROWS_AS(trace_of_frobenius(e, 31), Error);
    CHECK_THROWS_AS(trace_of_frobenius(e, 3), Error);
    CHECK_THROWS_AS(trace_of_frobenius(e, 15), Error);
  }
}
