#include "extremal/point_count.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

// Above this prime an unpinned BSGS result is an error rather than a
// fallback to enumeration.
constexpr u64 kNaiveFallbackLimit = u64{1} << 24;

struct Point {
  u64 x = 0;
  u64 y = 0;
  bool inf = true;

  friend bool operator==(const Point&, const Point&) = default;
};

class AffineCurve {
 public:
  AffineCurve(u64 a, u64 b, u64 p) : a_(a), b_(b), p_(p) {}

  u64 p() const { return p_; }

  u64 rhs(u64 x) const {
    u64 x2 = mul_mod(x, x, p_);
    return add_mod(add_mod(mul_mod(x2, x, p_), mul_mod(a_, x, p_), p_), b_, p_);
  }

  Point negate(const Point& P) const {
    if (P.inf) return P;
    return {P.x, P.y == 0 ? 0 : p_ - P.y, false};
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lambda;
    if (P.x == Q.x) {
      if (add_mod(P.y, Q.y, p_) == 0) return {};
      u64 num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p_), p_), a_, p_);
      lambda = mul_mod(num, inv_mod(add_mod(P.y, P.y, p_), p_), p_);
    } else {
      lambda = mul_mod(sub_mod(Q.y, P.y, p_), inv_mod(sub_mod(Q.x, P.x, p_), p_), p_);
    }
    u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), P.x, p_), Q.x, p_);
    u64 y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p_), p_), P.y, p_);
    return {x3, y3, false};
  }

  Point mul(Point P, u64 k) const {
    Point acc;
    while (k > 0) {
      if (k & 1) acc = add(acc, P);
      k >>= 1;
      if (k > 0) P = add(P, P);
    }
    return acc;
  }

  template <typename Rng>
  Point random_point(Rng& rng) const {
    std::uniform_int_distribution<u64> pick(0, p_ - 1);
    for (;;) {
      u64 x = pick(rng);
      u64 r = rhs(x);
      int chi = legendre(r, p_);
      if (chi == 0) return {x, 0, false};
      if (chi == 1) {
        u64 y = sqrt_mod(r, p_);
        if (pick(rng) & 1) y = p_ - y;
        return {x, y, false};
      }
    }
  }

 private:
  u64 a_, b_, p_;
};

u64 pollard_brent(u64 n, u64 seed) {
  if (n % 2 == 0) return 2;
  u64 c = seed % (n - 1) + 1;
  u64 y = seed % n, m = 64, g = 1, r = 1, q = 1, x = 0, ys = 0;
  auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_into(u64 n, std::vector<u64>& out) {
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = n;
  for (u64 seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> f;
  factor_into(n, f);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// Exact order of P, given that some multiple of it lies in [lo, hi].
u64 point_order(const AffineCurve& E, const Point& P, u64 lo, u64 hi) {
  if (P.inf) return 1;
  u64 width = hi - lo;
  u64 m = isqrt(width) + 1;

  std::unordered_map<u64, u64> baby;
  baby.reserve(2 * m);
  Point jP;
  for (u64 j = 1; j <= m; ++j) {
    jP = E.add(jP, P);
    if (jP.inf) return j;  // first j with jP = O is the order
    baby.emplace(jP.x, j);
  }

  u64 multiple = 0;
  Point step = E.mul(P, 2 * m + 1);
  Point G = E.mul(P, lo + m);
  for (u64 center = m; center - m <= width; center += 2 * m + 1) {
    if (G.inf) {
      multiple = lo + center;
      break;
    }
    if (auto it = baby.find(G.x); it != baby.end()) {
      u64 j = it->second;
      Point candidate = E.mul(P, j);
      multiple = (G == candidate) ? lo + center - j : lo + center + j;
      break;
    }
    G = E.add(G, step);
  }
  if (multiple == 0) throw Error(ErrorKind::AmbiguousOrder, "no multiple of point order in Hasse interval");

  u64 order = multiple;
  for (u64 q : distinct_prime_factors(multiple)) {
    while (order % q == 0 && E.mul(P, order / q).inf) order /= q;
  }
  return order;
}

u64 lcm_capped(u64 a, u64 b) {
  u64 g = std::gcd(a, b);
  u128 l = static_cast<u128>(a / g) * b;
  return l > ~u64{0} ? ~u64{0} : static_cast<u64>(l);
}

// Polynomials over F_p, lowest degree first, trimmed of leading zeros.
using Poly = std::vector<u64>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const u64 lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const u64 q = mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = sub_mod(a[shift + i], mul_mod(q, m[i], p), p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
  return poly_mod(std::move(r), m, p);
}

// Number of roots of x^3 + ax + b in F_p: degree of gcd(x^p - x, f).
int cubic_root_count(u64 a, u64 b, u64 p) {
  const Poly f{b, a, 0, 1};
  Poly acc{1}, base{0, 1};
  for (u64 e = p; e; e >>= 1) {
    if (e & 1) acc = poly_mulmod(acc, base, f, p);
    base = poly_mulmod(base, base, f, p);
  }
  acc.resize(std::max<std::size_t>(acc.size(), 2), 0);
  acc[1] = sub_mod(acc[1], 1, p);
  trim(acc);
  Poly g = f, h = acc;
  while (!h.empty()) {
    Poly r = poly_mod(g, h, p);
    g = std::move(h);
    h = std::move(r);
  }
  return static_cast<int>(g.size()) - 1;
}

// Number of N in [lo, hi] with e_mod | N, t_mod | (2p+2-N) and, when
// `odd` is set, N odd; stops at 2.
int count_candidates(u64 lo, u64 hi, u64 total, u64 e_mod, u64 t_mod, bool odd, u64& found) {
  int count = 0;
  if (e_mod >= t_mod) {
    for (u64 n = (lo + e_mod - 1) / e_mod * e_mod; n <= hi; n += e_mod) {
      if ((total - n) % t_mod == 0 && (!odd || n % 2 == 1)) {
        found = n;
        if (++count == 2) break;
      }
    }
  } else {
    // Enumerate twist orders instead; they share the Hasse interval.
    for (u64 t = (lo + t_mod - 1) / t_mod * t_mod; t <= hi; t += t_mod) {
      u64 n = total - t;
      if (n % e_mod == 0 && (!odd || n % 2 == 1)) {
        found = n;
        if (++count == 2) break;
      }
    }
  }
  return count;
}

}  // namespace

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 count_points_naive(const ReducedCurve& curve) {
  const u64 p = curve.p;
  if (p < 3 || p % 2 == 0) throw Error(ErrorKind::InvalidPrime, "naive count needs an odd prime");
  u64 count = 1;
  if (p < kNaiveCrossover) {
    std::vector<std::uint8_t> is_square(p, 0);
    for (u64 y = 0; y < p; ++y) is_square[y * y % p] = 1;
    for (u64 x = 0; x < p; ++x) {
      u64 r = ((x * x % p) * x + curve.a * x + curve.b) % p;
      count += r == 0 ? 1 : (is_square[r] ? 2 : 0);
    }
    return count;
  }
  for (u64 x = 0; x < p; ++x) {
    u64 x2 = mul_mod(x, x, p);
    u64 r = add_mod(add_mod(mul_mod(x2, x, p), mul_mod(curve.a, x, p), p), curve.b, p);
    count += static_cast<u64>(1 + legendre(r, p));
  }
  return count;
}

BsgsResult count_points_bsgs(const ReducedCurve& curve, int max_points) {
  const u64 p = curve.p;
  if (p < 5) throw Error(ErrorKind::InvalidPrime, "BSGS needs p >= 5");
  const u64 w = hasse_width(p);
  const u64 lo = p + 1 - w;
  const u64 hi = p + 1 + w;
  const u64 total = 2 * p + 2;

  u64 d = 2;
  while (legendre(d, p) != -1) ++d;
  const u64 d2 = mul_mod(d, d, p);
  AffineCurve E(curve.a, curve.b, p);
  AffineCurve twist(mul_mod(d2, curve.a, p), mul_mod(mul_mod(d2, d, p), curve.b, p), p);

  std::mt19937_64 rng(p * 0x9E3779B97F4A7C15ull ^ (curve.a << 17) ^ curve.b);
  // E[2](F_p) has r + 1 points for r roots of the cubic, on E and its twist
  // alike: r = 0 forces N odd, r = 1 gives 2 | N. With r = 3 the group is
  // Z/m x Z/n with 2 | m | n and every point order dividing n, so N is a
  // multiple of 2 * (lcm of observed orders).
  const int roots = cubic_root_count(curve.a, curve.b, p);
  const u64 two_part = roots == 3 ? 4 : (roots == 1 ? 2 : 1);
  const u64 rank_factor = roots == 3 ? 2 : 1;
  u64 e_mod = 1, t_mod = 1;
  BsgsResult result;
  for (int i = 0; i < max_points; ++i) {
    // Mostly points on E; every third point comes from the twist.
    bool on_twist = (i % 3 == 2);
    const AffineCurve& C = on_twist ? twist : E;
    u64 ord = point_order(C, C.random_point(rng), lo, hi);
    if (on_twist)
      t_mod = lcm_capped(t_mod, ord);
    else
      e_mod = lcm_capped(e_mod, ord);
    result.points_used = i + 1;

    u64 found = 0;
    int n = count_candidates(lo, hi, total, lcm_capped(e_mod * rank_factor, two_part),
                             lcm_capped(t_mod * rank_factor, two_part), roots == 0, found);
    if (n == 0) throw Error(ErrorKind::AmbiguousOrder, "no group order consistent with point orders");
    if (n == 1) {
      result.order = found;
      result.pinned = true;
      return result;
    }
  }
  return result;
}

i64 trace_of_frobenius(const ReducedCurve& curve) {
  const u64 p = curve.p;
  u64 order;
  if (p < kNaiveCrossover) {
    order = count_points_naive(curve);
  } else {
    auto r = count_points_bsgs(curve);
    if (r.pinned) {
      order = r.order;
    } else if (p < kNaiveFallbackLimit) {
      order = count_points_naive(curve);
    } else {
      throw Error(ErrorKind::AmbiguousOrder, "group order not pinned at p = " + std::to_string(p));
    }
  }
  i64 a = static_cast<i64>(p + 1) - static_cast<i64>(order);
  if (static_cast<i128>(a) * a > static_cast<i128>(4) * p)
    throw Error(ErrorKind::HasseViolation, "a_p = " + std::to_string(a) + " at p = " + std::to_string(p));
  return a;
}

FrobeniusTrace trace_of_frobenius(const CurveQ& curve, u64 p) {
  if (p <= 3) throw Error(ErrorKind::InvalidPrime, "trace_of_frobenius requires p > 3");
  return {p, trace_of_frobenius(reduce_mod_p(curve, p))};
}

}  // namespace extremal
