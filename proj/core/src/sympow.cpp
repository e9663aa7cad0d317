#include "extremal/sympow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"
#include "extremal/parallel.hpp"
#include "extremal/point_count.hpp"
#include "extremal/prime_scan.hpp"
#include "extremal/quadrature.hpp"
#include "extremal/st_approx.hpp"

namespace extremal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPrimesPerTask = 4096;

// a_p / (2 sqrt p) at a good prime; p = 3 has no BSGS path, count directly.
double normalized_trace(const CurveQ& curve, u64 p) {
  i64 a;
  if (p == 3) {
    a = 4 - static_cast<i64>(count_points_naive(reduce_mod_p(curve, p)));
  } else {
    a = trace_of_frobenius(curve, p).a_p;
  }
  return std::clamp(static_cast<double>(a) / (2.0 * std::sqrt(static_cast<double>(p))), -1.0, 1.0);
}

BigInt pow_big(u64 base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_gamma_pole(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Sums f(p) over primes in [lo, hi) in fixed-size, fixed-order blocks.
template <typename F>
double sum_over_primes(u64 lo, u64 hi, unsigned threads, F&& f) {
  const auto primes = primes_in_range(lo, hi);
  const std::size_t n_tasks = (primes.size() + kPrimesPerTask - 1) / kPrimesPerTask;
  std::vector<double> partial(n_tasks, 0.0);
  parallel_for_index(n_tasks, threads, [&](std::size_t t) {
    const std::size_t begin = t * kPrimesPerTask;
    const std::size_t end = std::min(primes.size(), begin + kPrimesPerTask);
    std::vector<double> terms;
    terms.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) terms.push_back(f(primes[i]));
    partial[t] = pairwise_sum(terms);
  });
  return pairwise_sum(partial);
}

}  // namespace

double bump_g(double y) {
  if (!(y > 0.5 && y < 2.5)) return 0.0;
  return std::exp(4.0 / 3.0 + 1.0 / ((y - 0.5) * (y - 2.5)));
}

double bump_integral() {
  static const double value = integrate(bump_g, 0.5, 2.5);
  return value;
}

double lambda_sym_good(int n, u64 p, int m, double theta_p) {
  return chebyshev_u(n, std::cos(m * theta_p)) * std::log(static_cast<double>(p));
}

SymPowLocalData SymPowLocalData::from_spec(const BadPrimeSpec& spec, int n) {
  SymPowLocalData data;
  data.spec = spec;
  data.n = n;
  data.beta_p = spec.beta;
  data.sign = spec.sign.value_or(1);
  const auto ce = conductor_exponent(spec, n);
  data.delta_n = ce.delta_n;
  if (ce.exact) {
    data.eps_n = ce.eps_n;
  } else if (static_cast<std::size_t>(n) < spec.eps.size()) {
    data.eps_n = spec.eps[n];
  }
  return data;
}

double lambda_sym_bad(const SymPowLocalData& data, int m) {
  const auto& spec = data.spec;
  const int n = data.n;
  if (m < 1 || n < 0) throw Error(ErrorKind::DomainError, "lambda_sym_bad needs m >= 1 and n >= 0");
  const double log_p = std::log(static_cast<double>(spec.p));
  auto inconsistent = [&](const std::string& why) {
    return Error(ErrorKind::InconsistentLocalData, "p = " + std::to_string(spec.p) + ": " + why);
  };
  if (n == 0) return log_p;

  switch (spec.kind) {
    case ReductionKind::Multiplicative:
    case ReductionKind::PotentiallyMultiplicative: {
      int a_pn;
      if (spec.kind == ReductionKind::Multiplicative) {
        if (spec.a_p1 == 0) throw inconsistent("multiplicative reduction needs a_p1 = +-1");
        a_pn = (spec.a_p1 < 0 && n % 2 == 1) ? -1 : 1;
      } else {
        if (spec.a_p1 != 0) throw inconsistent("potentially multiplicative reduction has a_p1 = 0");
        a_pn = n % 2 == 0 ? 1 : 0;
      }
      if (a_pn == 0) return 0.0;
      // a_{p,n}^m / p^{nm/2}
      const double mag = std::exp(-0.5 * n * m * log_p);
      return log_p * ((a_pn < 0 && m % 2 == 1) ? -mag : mag);
    }
    case ReductionKind::PotentiallyGoodAbelian: {
      if (!data.beta_p) throw inconsistent("abelian potentially good reduction needs beta");
      // (beta^{n-k} conj(beta)^k)^m / p^{nm/2} = exp(i m (n - 2k) phi).
      const double phi = std::arg(*data.beta_p);
      const int d = spec.inertia_order;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        if ((2 * k - n) % d != 0) continue;
        sum += std::cos(static_cast<double>(m) * (n - 2 * k) * phi);
      }
      return log_p * sum;
    }
    case ReductionKind::PotentiallyGoodNonabelian: {
      if (n % 2 != 0)
        throw Error(ErrorKind::UnsupportedCase, "non-abelian potentially good reduction with odd n");
      if (!data.eps_n) throw inconsistent("non-abelian potentially good reduction needs eps[n]");
      if (data.sign != 1 && data.sign != -1) throw inconsistent("sign must be +-1");
      const int sign_m = (data.sign < 0 && m % 2 == 1) ? -1 : 1;
      const int parity = ((static_cast<long>(m) * n / 2) % 2 == 0) ? 1 : -1;
      return sign_m * parity * log_p * (n + 1 - *data.eps_n);
    }
  }
  return 0.0;
}

ConductorExponent conductor_exponent(const BadPrimeSpec& spec, int n) {
  if (n < 0) throw Error(ErrorKind::DomainError, "n must be nonnegative");
  if (n == 0) return {0, 0, true};
  switch (spec.kind) {
    case ReductionKind::Multiplicative:
      return {n, 0, true};
    case ReductionKind::PotentiallyMultiplicative: {
      const bool odd = n % 2 == 1;
      const int delta = (spec.p == 2 && odd) ? (n + 1) / 2 * spec.delta1_at_2 : 0;
      return {odd ? n + 1 : n, delta, true};
    }
    case ReductionKind::PotentiallyGoodAbelian:
    case ReductionKind::PotentiallyGoodNonabelian: {
      int delta = 0;
      if (spec.p == 2) delta = 2 * (n + 1);
      if (spec.p == 3) delta = (n + 1) / 2;
      const bool eps_known = static_cast<std::size_t>(n) < spec.eps.size();
      const int eps = eps_known ? spec.eps[n] : n + 1;
      return {eps, delta, eps_known && spec.p >= 5};
    }
  }
  return {n + 1, 0, false};
}

ConductorBound conductor_bound(const CurveQ& curve, int n) {
  if (n < 0) throw Error(ErrorKind::DomainError, "n must be nonnegative");
  if (n == 0) return {BigInt(1), BigInt(1)};
  const auto e = static_cast<unsigned>(n + 1);
  ConductorBound out;
  out.bound = pow_big(2, 6 * e) * pow_big(3, (e + 1) / 2);
  BigInt exact = 1;
  bool all_exact = true;
  for (const auto& spec : curve.bad_primes()) {
    out.bound *= pow_big(spec.p, e);
    const auto ce = conductor_exponent(spec, n);
    if (!ce.exact) {
      all_exact = false;
      continue;
    }
    exact *= pow_big(spec.p, static_cast<unsigned>(ce.eps_n + ce.delta_n));
  }
  // No curve over Q has good reduction everywhere, so an empty list means missing data.
  if (all_exact && !curve.bad_primes().empty()) out.exact = std::move(exact);
  return out;
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (is_gamma_pole(z)) throw Error(ErrorKind::PoleError, "Gamma has a pole at a nonpositive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  // Lanczos, g = 7, n = 9.
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const std::complex<double> w = z - 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (w + static_cast<double>(i));
  const std::complex<double> t = w + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(x);
}

LogGammaFactor gamma_factor(int n, std::complex<double> s) {
  if (n < 0) throw Error(ErrorKind::DomainError, "n must be nonnegative");
  const double log2 = std::log(2.0), logpi = std::log(kPi);
  // log(2^{1-s} pi^{-s})
  const std::complex<double> unit = (1.0 - s) * log2 - s * logpi;
  std::complex<double> total = 0.0;
  if (n % 2 == 1) {
    const int half = (n + 1) / 2;
    total += static_cast<double>(half) * unit;
    for (int j = 1; j <= half; ++j) total += log_gamma(s + (j - 0.5) * (n - 1));
  } else {
    const double n2 = static_cast<double>((n / 2) % 2);
    total += -0.5 * (s + n2) * logpi + log_gamma(0.5 * (s + n2));
    total += static_cast<double>(n / 2) * unit;
    for (int j = 1; j <= n / 2; ++j) total += log_gamma(s + static_cast<double>(j) * (n - 1));
  }
  double arg = std::remainder(total.imag(), 2.0 * kPi);
  if (arg <= -kPi) arg += 2.0 * kPi;
  return {total.real(), arg};
}

double smoothed_sum(const CurveQ& curve, int n, double x, unsigned threads) {
  if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "smoothed_sum needs x > 0");
  if (n < 0) throw Error(ErrorKind::DomainError, "n must be nonnegative");
  const BumpWeight g{x};
  const u64 lo = static_cast<u64>(std::floor(x / 2.0)) + 1;
  const u64 hi = static_cast<u64>(std::ceil(5.0 * x / 2.0));
  return sum_over_primes(lo, hi, threads, [&](u64 p) {
    if (curve.divides_disc(p)) return 0.0;
    const double w = g(static_cast<double>(p));
    if (w == 0.0) return 0.0;
    const double u = n == 0 ? 1.0 : chebyshev_u(n, normalized_trace(curve, p));
    return u * w * std::log(static_cast<double>(p));
  });
}

PsiResult psi_sym(const CurveQ& curve, int n, double x, unsigned threads) {
  if (n < 0) throw Error(ErrorKind::DomainError, "n must be nonnegative");
  PsiResult result;
  if (x < 2.0) return result;
  const u64 limit = static_cast<u64>(std::floor(x));
  for (const auto& p : primes_in_range(2, limit + 1)) {
    if (n > 0 && curve.divides_disc(p) && !curve.bad_prime(p)) result.skipped_bad_primes.push_back(p);
  }
  result.value = sum_over_primes(2, limit + 1, threads, [&](u64 p) {
    const double log_p = std::log(static_cast<double>(p));
    const bool bad = curve.divides_disc(p);
    if (bad && n > 0 && !curve.bad_prime(p)) return 0.0;
    std::vector<double> terms;
    std::optional<SymPowLocalData> local;
    double theta = 0.0;
    if (bad && n > 0) local = SymPowLocalData::from_spec(*curve.bad_prime(p), n);
    if (!bad && n > 0) theta = std::acos(normalized_trace(curve, p));
    int m = 1;
    for (u128 pm = p; pm <= limit; pm *= p, ++m) {
      if (n == 0)
        terms.push_back(log_p);
      else if (bad)
        terms.push_back(lambda_sym_bad(*local, m));
      else
        terms.push_back(lambda_sym_good(n, p, m, theta));
    }
    return pairwise_sum(terms);
  });
  return result;
}

ErrorTerms psi_error_terms(const CurveQ& curve, int n, double lo, double hi) {
  ErrorTerms out;
  if (hi <= lo || hi < 2.0) return out;
  const u64 top = static_cast<u64>(std::ceil(hi));
  const u64 first = static_cast<u64>(std::floor(std::max(lo, 1.0))) + 1;
  std::vector<double> terms;
  for (u64 p : primes_in_range(2, top)) {
    const bool bad = curve.divides_disc(p);
    if (bad && n > 0 && !curve.bad_prime(p)) continue;
    std::optional<SymPowLocalData> local;
    std::optional<double> theta;
    int m = 1;
    for (u128 pm = p; pm < top; pm *= p, ++m) {
      if (pm < first || static_cast<double>(pm) >= hi) continue;
      if (m == 1 && !bad) continue;
      double value;
      if (n == 0) {
        value = std::log(static_cast<double>(p));
      } else if (bad) {
        if (!local) local = SymPowLocalData::from_spec(*curve.bad_prime(p), n);
        value = lambda_sym_bad(*local, m);
      } else {
        if (!theta) theta = std::acos(normalized_trace(curve, p));
        value = lambda_sym_good(n, p, m, *theta);
      }
      terms.push_back(value);
    }
  }
  out.signed_sum = pairwise_sum(terms);
  for (double& t : terms) t = std::abs(t);
  out.abs_sum = pairwise_sum(terms);
  return out;
}

}  // namespace extremal
