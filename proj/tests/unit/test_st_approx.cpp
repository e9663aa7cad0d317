#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "extremal/errors.hpp"
#include "extremal/quadrature.hpp"
#include "extremal/st_approx.hpp"

using namespace extremal;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("st_approx") {
  TEST_CASE("mu_st") {
    CHECK(mu_st(Interval(0, kPi)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu_st(Interval(0, kPi / 2)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mu_st(Interval(0, 0.1)) == doctest::Approx(0.0002117825815861715).epsilon(1e-12));
    const Interval I(0.4, 2.2);
    const double q = integrate([](double t) { return (2 / kPi) * std::sin(t) * std::sin(t); }, I.alpha, I.beta);
    CHECK(std::abs(q - mu_st(I)) < 1e-13);
    CHECK_THROWS_AS(Interval(1.0, 0.5), Error);
    CHECK_THROWS_AS(Interval(-0.1, 0.5), Error);
    CHECK_THROWS_AS(Interval(0.0, 4.0), Error);
  }

  TEST_CASE("chebyshev_u") {
    CHECK(chebyshev_u(0, 0.3) == 1.0);
    CHECK(chebyshev_u(2, 0.3) == doctest::Approx(4 * 0.09 - 1));
    for (int n = 0; n <= 30; ++n) CHECK(chebyshev_u(n, 1.0) == doctest::Approx(n + 1));
    double worst = 0.0;
    for (int n = 0; n <= 100; ++n)
      for (double t = 0.01; t <= kPi - 0.01; t += 0.013)
        worst = std::max(worst, std::abs(chebyshev_u(n, std::cos(t)) - std::sin((n + 1) * t) / std::sin(t)));
    CHECK(worst < 1e-8);
    std::vector<double> all(12);
    chebyshev_u_all(-0.7, all);
    for (int n = 0; n < 12; ++n) CHECK(all[n] == doctest::Approx(chebyshev_u(n, -0.7)).epsilon(1e-14));
  }

  TEST_CASE("sawtooth, fejer, dirichlet") {
    CHECK(sawtooth(0.25) == -0.25);
    CHECK(sawtooth(0.0) == 0.0);
    CHECK(sawtooth(1.75) == 0.25);
    CHECK(sawtooth(-0.25) == 0.25);
    for (int M : {1, 3, 17}) CHECK(fejer(M, 0.0) == doctest::Approx(M));
    CHECK(fejer(1, 0.3) == doctest::Approx(1.0));
    for (int M : {2, 5, 10}) CHECK(integrate([M](double x) { return fejer(M, x); }, -0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    // Series branch and closed form agree near the switch.
    for (double x : {2e-4, 3.1e-4, 3.3e-4, 1.0 - 3.2e-4}) {
      const int M = 9;
      double series = 1.0;
      for (int k = 1; k < M; ++k) series += 2.0 * (1.0 - double(k) / M) * std::cos(2 * kPi * k * x);
      CHECK(fejer(M, x) == doctest::Approx(series).epsilon(1e-12));
    }
    CHECK(dirichlet(0, 0.37) == 1.0);
    CHECK(dirichlet(6, 0.0) == doctest::Approx(13));
    for (int M : {3, 8})
      for (double x = -0.49; x < 0.5; x += 0.07) {
        double s = 0.0;
        for (int k = 0; k <= M; ++k) s += dirichlet(k, x);
        CHECK((M + 1) * fejer(M + 1, x) == doctest::Approx(s).epsilon(1e-12));
      }
  }

  TEST_CASE("vaaler and beurling") {
    for (int M : {8, 32}) {
      CHECK(vaaler(M, 0.5) == doctest::Approx(vaaler(M, -0.5)).epsilon(1e-12));
      for (double x = -0.5; x < 0.5; x += 0.031) CHECK(std::abs(vaaler(M, x) - vaaler(M, x + 1)) < 1e-10);
      // |V_M - s| <= min(1, c / (M|x|)^3): record that c stays moderate.
      double c = 0.0;
      for (int i = 1; i < 10000; ++i) {
        const double x = -0.5 + i / 10000.0;
        if (std::abs(x) < 1e-12) continue;
        const double gap = std::abs(vaaler(M, x) - sawtooth(x));
        CHECK(gap <= 1.0);
        c = std::max(c, gap * std::pow(M * std::abs(x), 3));
      }
      CHECK(c < 5.0);
    }
    for (int M : {4, 16, 64}) {
      CHECK(beurling(M, 0.0) == doctest::Approx(vaaler(M, 0.0) + 0.5).epsilon(1e-14));
      for (int i = 0; i <= 10000; ++i) {
        const double x = -0.5 + i / 10000.0;
        const double d = beurling(M, x) - sawtooth(x);
        REQUIRE(d >= -1e-12);
        REQUIRE(d <= 1.0 + 1.0 / (2.0 * (M + 1)) + 1e-12);
      }
    }
  }

  TEST_CASE("quadrature rules") {
    const auto r = QuadratureRule::gauss_legendre(10, -1.0, 2.0);
    double s = 0.0;
    for (double w : r.weights) s += w;
    CHECK(std::abs(s - 3.0) < 1e-12);
    // Exact through degree 19.
    CHECK(r.integrate([](double x) { return std::pow(x, 19); }) == doctest::Approx((std::pow(2.0, 20) - 1) / 20).epsilon(1e-13));
    const auto c = QuadratureRule::composite(64, 8, 0.0, kPi);
    CHECK(c.nodes.size() == 512);
    CHECK(c.integrate([](double x) { return std::sin(x); }) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
    CHECK_THROWS_AS(integrate([](double x) { return x == 0.0 ? 0.0 : std::sin(1.0 / x) / x; }, 0.0, 1.0), Error);
  }

  TEST_CASE("orthonormality") {
    double worst = 0.0;
    for (int m = 0; m <= 20; ++m)
      for (int n = 0; n <= 20; ++n) worst = std::max(worst, std::abs(u_inner_product(m, n) - (m == n)));
    CHECK(worst < 1e-9);
  }

  TEST_CASE("fejer integral identity") {
    CHECK(fejer_integral_identity(10, 3, 0.0) == doctest::Approx(1.0));
    CHECK(fejer_integral_identity(10, 10, 0.0) == doctest::Approx(0.5));
    for (int M : {5, 10, 20})
      for (int n = 0; n <= M; ++n) {
        CHECK(fejer_integral_identity(M, n, 0.0) == doctest::Approx(n < M ? 1.0 : 0.5));
        for (double beta : {0.0, 1.0 / (2 * kPi * M), 0.1})
          REQUIRE(std::abs(fejer_integral_identity(M, n, beta) - fejer_integral_numeric(M, n, beta)) < 1e-8);
      }
    CHECK_THROWS_AS(fejer_integral_identity(4, 5, 0.0), Error);
  }

  TEST_CASE("majorant and minorant evaluation") {
    const Interval I(0.3, 1.1);
    for (int M : {10, 50}) {
      const auto up = majorant(I, M), lo = minorant(I, M);
      CHECK(up.coeffs().size() == static_cast<std::size_t>(M) + 1);
      double worst = 0.0;
      for (double t = 0.0; t <= kPi; t += 0.0123) {
        worst = std::max(worst, std::abs(up(t) - up.direct(t)));
        worst = std::max(worst, std::abs(lo(t) - lo.direct(t)));
      }
      CHECK(worst < 1e-10);
      // Re-expanding the polynomial reproduces its coefficients.
      const auto again = u_coefficients([&](double t) { return up(t); }, M);
      for (int n = 0; n <= M; ++n) CHECK(std::abs(again[n] - up.coeffs()[n]) < 1e-9);
      CHECK(lo.coeffs()[0] <= up.coeffs()[0]);
    }
    const auto full = minorant(Interval(0, kPi), 12);
    CHECK(std::abs(full.coeffs()[0] - 1.0) <= 4.0 / 13);
    for (int n = 1; n <= 12; ++n) CHECK(std::abs(full.coeffs()[n]) < 1e-12);
    CHECK_THROWS_AS(majorant(I, 0), Error);
  }

  TEST_CASE("coefficient bounds for a fixed interval") {
    const Interval I(0.3, 1.1);
    for (int M : {10, 50, 200}) {
      for (const auto& c : coefficient_checks(majorant(I, M))) CHECK_MESSAGE(c.pass, c.name, " M=", M);
      for (const auto& c : coefficient_checks(minorant(I, M))) CHECK_MESSAGE(c.pass, c.name, " M=", M);
    }
  }

  TEST_CASE("sandwich on random intervals") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int k = 0; k < 3; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const Interval I(a, b);
      const int M = 5 + static_cast<int>(rng() % 60);
      CHECK(sandwich_violation(minorant(I, M), majorant(I, M)) <= 0.0);
    }
  }

  TEST_CASE("decay for shrinking intervals, not for fixed ones") {
    const double c8 = decay_constant(8);
    for (int M : {16, 32}) CHECK(decay_constant(M) <= 2 * c8);
    double prev = 0.0;
    for (int M : {10, 40, 160}) {
      const auto poly = majorant(Interval(0, 0.5), M);
      double worst = 0.0;
      for (double c : poly.coeffs()) worst = std::max(worst, M * std::abs(c));
      CHECK(worst > prev);
      prev = worst;
    }
  }

  TEST_CASE("verify_approximation on [0, 1/M]") {
    for (const auto& c : verify_approximation(Interval(0, 1.0 / 16), 16)) CHECK_MESSAGE(c.pass, c.name);
  }
}
