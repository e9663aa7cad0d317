#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <gmpxx.h>

#include "extremal/errors.hpp"
#include "extremal/prime_scan.hpp"
#include "extremal/st_approx.hpp"
#include "extremal/sympow.hpp"

using namespace extremal;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Stirling series after shifting Re z past 20; independent of the Lanczos path.
cd stirling_log_gamma(cd z) {
  cd shift = 0.0;
  while (z.real() < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cd inv = 1.0 / z, inv2 = inv * inv;
  const cd series = inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680))));
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi) + series - shift;
}

double wrap(double a) {
  a = std::remainder(a, 2 * kPi);
  return a <= -kPi ? a + 2 * kPi : a;
}

BadPrimeSpec spec(u64 p, ReductionKind kind, int a_p1 = 0) {
  BadPrimeSpec s;
  s.p = p;
  s.kind = kind;
  s.a_p1 = a_p1;
  return s;
}

// psi fixture: A=1, B=1 has disc -2^4 * 31.
CurveQ psi_fixture() {
  auto two = spec(2, ReductionKind::PotentiallyMultiplicative, 0);
  two.delta1_at_2 = 1;
  return CurveQ(1, 1, {two, spec(31, ReductionKind::Multiplicative, 1)}, "psi");
}

mpz_class bound_c(const std::vector<unsigned long>& primes, unsigned long n) {
  mpz_class r, t;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, 6 * (n + 1));
  mpz_ui_pow_ui(t.get_mpz_t(), 3, (n + 2) / 2);
  r *= t;
  for (auto p : primes) {
    mpz_ui_pow_ui(t.get_mpz_t(), p, n + 1);
    r *= t;
  }
  return r;
}

}  // namespace

TEST_SUITE("sympow") {
  TEST_CASE("bump") {
    CHECK(bump_g(1.5) == doctest::Approx(std::exp(1.0 / 3)).epsilon(1e-15));
    CHECK(bump_g(0.5) == 0.0);
    CHECK(bump_g(2.5) == 0.0);
    CHECK(bump_g(3.0) == 0.0);
    CHECK(bump_g(0.50001) < 1e-100);
    CHECK(bump_integral() == doctest::Approx(1.68436508583470776).epsilon(1e-12));
    const BumpWeight g{1000.0};
    CHECK(g(1500.0) == doctest::Approx(std::exp(1.0 / 3)));
    CHECK(g(499.0) == 0.0);
    CHECK(g(2501.0) == 0.0);
  }

  TEST_CASE("lambda at good primes") {
    CHECK(lambda_sym_good(0, 7, 3, 1.1) == doctest::Approx(std::log(7.0)));
    const double th = theta_of(101, 13);
    CHECK(lambda_sym_good(1, 101, 1, th) == doctest::Approx(13 / std::sqrt(101.0) * std::log(101.0)));
    for (int n = 0; n <= 50; ++n)
      for (int m = 1; m <= 5; ++m)
        for (double t = 0.0; t <= kPi; t += 0.01)
          REQUIRE(std::abs(lambda_sym_good(n, 101, m, t)) <= (n + 1) * std::log(101.0) * (1 + 1e-12));
  }

  TEST_CASE("lambda at bad primes") {
    const auto mult = spec(31, ReductionKind::Multiplicative, 1);
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(mult, 2), 1) == doctest::Approx(std::log(31.0) / 31));
    const auto split_neg = spec(31, ReductionKind::Multiplicative, -1);
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(split_neg, 1), 1) ==
          doctest::Approx(-std::log(31.0) / std::sqrt(31.0)));
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(split_neg, 1), 2) == doctest::Approx(std::log(31.0) / 31));

    const auto pm = spec(7, ReductionKind::PotentiallyMultiplicative, 0);
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(pm, 3), 1) == 0.0);
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(pm, 2), 1) == doctest::Approx(std::log(7.0) / 7));
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(pm, 0), 4) == doctest::Approx(std::log(7.0)));

    auto ab = spec(5, ReductionKind::PotentiallyGoodAbelian);
    ab.inertia_order = 4;
    ab.beta = std::polar(std::sqrt(5.0), 0.9);
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(ab, 1), 1) == 0.0);
    // n = 2: k = 1 only (2k - 2 = 0); the term is 1.
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(ab, 2), 3) == doctest::Approx(std::log(5.0)));
    // n = 4, d = 4: k in {0, 2, 4} gives 1 + 2 cos(4 m phi).
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(ab, 4), 2) ==
          doctest::Approx(std::log(5.0) * (1 + 2 * std::cos(8 * 0.9))));
    ab.beta.reset();
    CHECK_THROWS_AS(lambda_sym_bad(SymPowLocalData::from_spec(ab, 2), 1), Error);

    auto na = spec(11, ReductionKind::PotentiallyGoodNonabelian);
    na.sign = 1;
    na.eps = {0, 2, 2};
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(na, 2), 1) == doctest::Approx(-std::log(11.0)));
    CHECK(lambda_sym_bad(SymPowLocalData::from_spec(na, 2), 2) == doctest::Approx(std::log(11.0)));
    try {
      lambda_sym_bad(SymPowLocalData::from_spec(na, 1), 1);
      FAIL("odd n accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedCase);
    }
    na.eps.clear();
    CHECK_THROWS_AS(lambda_sym_bad(SymPowLocalData::from_spec(na, 2), 1), Error);
  }

  TEST_CASE("bad-prime coefficients obey the (n+1) log p bound") {
    auto ab = spec(13, ReductionKind::PotentiallyGoodAbelian);
    ab.beta = std::polar(std::sqrt(13.0), 2.1);
    auto na = spec(13, ReductionKind::PotentiallyGoodNonabelian);
    na.sign = -1;
    for (int n = 0; n <= 10; ++n) na.eps.push_back(n % (n + 2));
    for (int d : {2, 3, 4, 6}) {
      ab.inertia_order = d;
      for (int n = 0; n <= 10; ++n)
        for (int m = 1; m <= 5; ++m)
          CHECK(std::abs(lambda_sym_bad(SymPowLocalData::from_spec(ab, n), m)) <= (n + 1) * std::log(13.0) + 1e-12);
    }
    for (const auto& s : {spec(13, ReductionKind::Multiplicative, 1), spec(13, ReductionKind::Multiplicative, -1),
                          spec(13, ReductionKind::PotentiallyMultiplicative, 0), na})
      for (int n = 0; n <= 10; n += (s.kind == ReductionKind::PotentiallyGoodNonabelian ? 2 : 1))
        for (int m = 1; m <= 5; ++m)
          CHECK(std::abs(lambda_sym_bad(SymPowLocalData::from_spec(s, n), m)) <= (n + 1) * std::log(13.0) + 1e-12);
  }

  TEST_CASE("conductor exponents") {
    auto ce = conductor_exponent(spec(37, ReductionKind::Multiplicative, 1), 3);
    CHECK(ce.eps_n == 3);
    CHECK(ce.delta_n == 0);
    CHECK(ce.exact);
    auto two = spec(2, ReductionKind::PotentiallyMultiplicative);
    two.delta1_at_2 = 1;
    ce = conductor_exponent(two, 3);
    CHECK(ce.eps_n == 4);
    CHECK(ce.delta_n == 2);
    CHECK(ce.exact);
    ce = conductor_exponent(two, 2);
    CHECK(ce.eps_n == 2);
    CHECK(ce.delta_n == 0);
    auto ab = spec(5, ReductionKind::PotentiallyGoodAbelian);
    ab.inertia_order = 4;
    ce = conductor_exponent(ab, 2);
    CHECK(ce.eps_n == 3);
    CHECK(ce.delta_n == 0);
    CHECK_FALSE(ce.exact);
    ab.p = 3;
    CHECK(conductor_exponent(ab, 4).delta_n == 2);
    ab.p = 2;
    CHECK(conductor_exponent(ab, 4).delta_n == 10);
  }

  TEST_CASE("conductor bound") {
    const CurveQ m37(0, 37, {spec(37, ReductionKind::Multiplicative, 1)});
    // 27 * 37^2 * 4 ... disc = -16 * 27 * 37^2 so 37 | disc.
    auto b = conductor_bound(m37, 3);
    REQUIRE(b.exact);
    CHECK(*b.exact == 50653);
    CHECK(b.bound == BigInt("282988835241984"));
    CHECK(b.bound.str() == bound_c({37}, 3).get_str());
    CHECK(conductor_bound(m37, 0).bound == 1);
    CHECK(*conductor_bound(m37, 0).exact == 1);
    CHECK_FALSE(conductor_bound(CurveQ(-1, 0), 2).exact);
  }

  TEST_CASE("gamma factor closed forms") {
    for (double s = 0.3; s < 12; s += 0.7) {
      const auto g0 = gamma_factor(0, s);
      CHECK(std::abs(g0.log_abs - (-s / 2 * std::log(kPi) + std::lgamma(s / 2))) < 1e-10);
      CHECK(g0.arg == doctest::Approx(0.0));
      const auto g1 = gamma_factor(1, s);
      CHECK(std::abs(g1.log_abs - ((1 - s) * std::log(2.0) - s * std::log(kPi) + std::lgamma(s))) < 1e-10);
    }
    const auto g2 = gamma_factor(2, 1.0);
    CHECK(std::abs(g2.log_abs - (-2.2894597716988003483)) < 1e-10);
    CHECK(std::abs(g2.log_abs - std::log(std::tgamma(1.0) * std::tgamma(2.0) / (kPi * kPi))) < 1e-10);
  }

  TEST_CASE("gamma factor against frozen values") {
    struct Row {
      int n;
      cd s;
      double log_abs, arg;
    };
    const Row rows[] = {
        {3, {0.5, 2.0}, -1.3700458657932821838, 2.0002745651493651904},
        {4, {1.5, -3.0}, 2.0047268334738661134, 2.9021526078152831859},
        {5, {3.0, 0.0}, 19.308419172750808574, 0.0},
        {2, {0.25, 10.0}, -20.277533563484624883, -0.38891506879034602146},
    };
    for (const auto& r : rows) {
      const auto g = gamma_factor(r.n, r.s);
      CHECK(std::abs(g.log_abs - r.log_abs) < 1e-9);
      CHECK(std::abs(wrap(g.arg - r.arg)) < 1e-9);
    }
    CHECK(gamma_factor(100, 2.0).log_abs == doctest::Approx(886234.07952100215688).epsilon(1e-13));
  }

  TEST_CASE("log_gamma against a Stirling series") {
    for (double re = -7.3; re < 30; re += 1.37)
      for (double im : {-25.0, -3.0, 0.0, 0.4, 11.0}) {
        const cd z(re, im);
        const cd a = log_gamma(z), b = stirling_log_gamma(z);
        CHECK(std::abs(a.real() - b.real()) < 1e-10 * std::max(1.0, std::abs(b.real())));
        CHECK(std::abs(wrap(a.imag() - b.imag())) < 1e-9);
      }
    CHECK_THROWS_AS(log_gamma(cd(-3.0, 0.0)), Error);
    CHECK_THROWS_AS(gamma_factor(0, cd(0.0, 0.0)), Error);
  }

  TEST_CASE("psi_sym") {
    const CurveQ e = psi_fixture();
    CHECK(psi_sym(e, 0, 10).value == doctest::Approx(7.832014180505469).epsilon(1e-14));
    CHECK(psi_sym(e, 3, 1.5).value == 0.0);
    const double want100[] = {94.0453112293574, -9.127934261859727, 14.812968051097386, 23.714827960619175};
    const double want1000[] = {996.6809122471753, -64.14861994923233, 72.31337981336947, -32.58484164501172};
    for (int n = 0; n < 4; ++n) {
      CHECK(psi_sym(e, n, 100).value == doctest::Approx(want100[n]).epsilon(1e-12));
      CHECK(psi_sym(e, n, 1000, 4).value == doctest::Approx(want1000[n]).epsilon(1e-12));
    }
    const CurveQ bare(1, 1);
    const auto r = psi_sym(bare, 2, 100);
    CHECK(r.skipped_bad_primes == std::vector<u64>{2, 31});
    CHECK(psi_sym(bare, 0, 100).skipped_bad_primes.empty());
    for (int n = 0; n <= 6; ++n)
      for (double x : {50.0, 1000.0, 10000.0})
        CHECK(std::abs(psi_sym(e, n, x).value) <= (n + 1) * psi_sym(e, 0, x).value);
  }

  TEST_CASE("smoothed sums") {
    const CurveQ e = psi_fixture();
    CHECK(smoothed_sum(e, 3, 1.0) == 0.0);  // (1/2, 5/2) holds only the bad prime 2
    const double ratio = smoothed_sum(e, 0, 1e4) / (1e4 * bump_integral());
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);
    CHECK(smoothed_sum(e, 1, 2e4, 1) == smoothed_sum(e, 1, 2e4, 6));
    CHECK_THROWS_AS(smoothed_sum(e, 0, 0.0), Error);
  }

  TEST_CASE("error terms stay below 10(n+1) sqrt(x)") {
    const CurveQ e = psi_fixture();
    const double x = 1e5;
    for (int n = 0; n <= 6; ++n) {
      const auto t = psi_error_terms(e, n, x / 2, 5 * x / 2);
      CHECK(t.abs_sum <= 10 * (n + 1) * std::sqrt(x));
      CHECK(std::abs(t.signed_sum) <= t.abs_sum);
    }
  }
}
