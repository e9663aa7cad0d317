#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "extremal/curves.hpp"

namespace extremal {

using BigInt = boost::multiprecision::cpp_int;

/// exp(4/3 + 1/((y - 1/2)(y - 5/2))) on (1/2, 5/2), zero elsewhere.
/// Peaks at y = 3/2 with value e^{1/3}.
double bump_g(double y);

/// integral_0^inf g(t) dt, computed once by quadrature.
double bump_integral();

/// g_x(y) = g(y / x), supported on (x/2, 5x/2).
struct BumpWeight {
  double x;
  double operator()(double y) const { return bump_g(y / x); }
};

/// Lambda_{Sym^n}(p^m) = U_n(cos(m theta_p)) log p at a good prime.
double lambda_sym_good(int n, u64 p, int m, double theta_p);

/// Local parameters of Sym^n(E) at one bad prime.
struct SymPowLocalData {
  BadPrimeSpec spec;
  int n = 0;
  std::optional<std::complex<double>> beta_p;
  std::optional<int> eps_n;  // tame exponent, when exactly known
  int delta_n = 0;
  int sign = 1;

  static SymPowLocalData from_spec(const BadPrimeSpec& spec, int n);
};

/// Lambda_{Sym^n}(p^m) from the bad-prime Euler factor. For (potentially)
/// multiplicative primes a_{p,n} follows the inertia-invariant dimension:
/// a_{p,1}^n when multiplicative; 0 (n odd) or 1 (n even) when potentially
/// multiplicative. Odd n is unsupported for non-abelian potentially good
/// reduction. n = 0 gives log p for every kind.
double lambda_sym_bad(const SymPowLocalData& data, int m);

struct ConductorExponent {
  int eps_n;
  int delta_n;  // exact value, or an upper bound when !exact
  bool exact;
};

ConductorExponent conductor_exponent(const BadPrimeSpec& spec, int n);

struct ConductorBound {
  BigInt bound;                // 2^{6(n+1)} 3^{ceil((n+1)/2)} prod p^{n+1}
  std::optional<BigInt> exact; // prod p^{eps_n + delta_n} when bad primes are listed and all exact
};

ConductorBound conductor_bound(const CurveQ& curve, int n);

/// log Gamma(z) for complex z, principal branch of each factor summed.
std::complex<double> log_gamma(std::complex<double> z);

struct LogGammaFactor {
  double log_abs;
  double arg;  // wrapped to (-pi, pi]
};

/// Archimedean factor gamma(s, Sym^n E), evaluated in log space.
LogGammaFactor gamma_factor(int n, std::complex<double> s);

/// sum over good p of U_n(cos theta_p) g_x(p) log p. Intended for x >= 100.
double smoothed_sum(const CurveQ& curve, int n, double x, unsigned threads = 1);

struct PsiResult {
  double value = 0.0;
  std::vector<u64> skipped_bad_primes;
};

/// sum_{p^m <= x} Lambda_{Sym^n}(p^m). Bad primes without local data are
/// skipped (and listed) for n >= 1.
PsiResult psi_sym(const CurveQ& curve, int n, double x, unsigned threads = 1);

/// Prime powers p^m (m >= 2) plus bad primes p with p^m in (lo, hi): the part
/// of psi_sym separating the smoothed good-prime sum from the full sum.
struct ErrorTerms {
  double signed_sum = 0.0;
  double abs_sum = 0.0;
};

ErrorTerms psi_error_terms(const CurveQ& curve, int n, double lo, double hi);

}  // namespace extremal
