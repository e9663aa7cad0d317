#include "extremal/st_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"
#include "extremal/quadrature.hpp"

namespace extremal {

namespace {

constexpr double kPi = std::numbers::pi;

// Representative of x modulo 1 in [-1/2, 1/2).
double wrap_unit(double x) { return x - std::floor(x + 0.5); }

// Below this |sin(pi x)| the Fejer kernel is summed as a cosine series.
constexpr double kFejerSeriesCutoff = 1e-3;

double majorant_one(double a, double b, int M, double x) {
  // S(x) = (b - a) + B(x - b) + B(a - x) majorizes the indicator of [a, b].
  return (b - a) + beurling(M, x - b) + beurling(M, a - x);
}

// Majorant of a single interval in theta, before coefficient extraction.
double majorant_theta(double alpha, double beta, int M, double theta) {
  const double a = alpha / (2.0 * kPi);
  const double b = beta / (2.0 * kPi);
  const double x = theta / (2.0 * kPi);
  return majorant_one(a, b, M, x) + majorant_one(a, b, M, -x);
}

}  // namespace

Interval::Interval(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= kPi))
    throw Error(ErrorKind::DomainError, "interval must satisfy 0 <= alpha <= beta <= pi");
}

double mu_st(const Interval& interval) {
  const double a = interval.alpha, b = interval.beta;
  return (2.0 / kPi) * ((b - a) / 2.0 - (std::sin(2.0 * b) - std::sin(2.0 * a)) / 4.0);
}

double chebyshev_u(int n, double x) {
  if (n <= 0) return n == 0 ? 1.0 : 0.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 2; k <= n; ++k) {
    double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void chebyshev_u_all(double x, std::vector<double>& out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = 2.0 * x;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

double sawtooth(double x) {
  double f = x - std::floor(x);
  return f == 0.0 ? 0.0 : f - 0.5;
}

double fejer(int M, double x) {
  const double y = wrap_unit(x);
  const double s = std::sin(kPi * y);
  if (std::abs(s) < kFejerSeriesCutoff) {
    double sum = 1.0;
    for (int k = 1; k < M; ++k) sum += 2.0 * (1.0 - static_cast<double>(k) / M) * std::cos(2.0 * kPi * k * y);
    return sum;
  }
  const double r = std::sin(kPi * M * y) / s;
  return r * r / M;
}

double dirichlet(int k, double x) {
  double sum = 1.0;
  for (int j = 1; j <= k; ++j) sum += 2.0 * std::cos(2.0 * kPi * j * x);
  return sum;
}

double vaaler(int M, double x) {
  const int K = M + 1;
  const double y = wrap_unit(x);
  double sum = 0.0;
  for (int k = 1; k <= M; ++k) {
    const double u = static_cast<double>(k) / K;
    sum += (u - 0.5) * fejer(K, y - u);
  }
  return sum / K + std::sin(2.0 * kPi * K * y) / (2.0 * kPi * K) - fejer(K, y) * std::sin(2.0 * kPi * y) / (2.0 * kPi);
}

double beurling(int M, double x) { return vaaler(M, x) + fejer(M + 1, x) / (2.0 * (M + 1)); }

double majorant_direct(const Interval& interval, int M, double theta) {
  return majorant_theta(interval.alpha, interval.beta, M, theta);
}

double minorant_direct(const Interval& interval, int M, double theta) {
  double value = 1.0;
  if (interval.alpha > 0.0) value -= majorant_theta(0.0, interval.alpha, M, theta);
  if (interval.beta < kPi) value -= majorant_theta(interval.beta, kPi, M, theta);
  return value;
}

ApproxPolynomial::ApproxPolynomial(int M, std::vector<double> coeffs, Side side, Interval interval)
    : M_(M), coeffs_(std::move(coeffs)), side_(side), interval_(interval) {
  if (M < 1) throw Error(ErrorKind::DomainError, "degree M must be >= 1");
  if (coeffs_.size() != static_cast<std::size_t>(M) + 1)
    throw Error(ErrorKind::DomainError, "coefficient count must be M + 1");
}

double ApproxPolynomial::operator()(double theta) const {
  const double x2 = 2.0 * std::cos(theta);
  double b1 = 0.0, b2 = 0.0;
  for (int n = M_; n >= 0; --n) {
    double b0 = coeffs_[n] + x2 * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

double ApproxPolynomial::direct(double theta) const {
  return side_ == Side::Majorant ? majorant_direct(interval_, M_, theta) : minorant_direct(interval_, M_, theta);
}

std::vector<double> u_coefficients(const std::function<double(double)>& f, int M) {
  const std::size_t dim = static_cast<std::size_t>(M) + 1;
  std::vector<double> u(dim);
  return integrate_vector(
      [&](double theta, double* out) {
        const double s = std::sin(theta);
        const double w = f(theta) * (2.0 / kPi) * s * s;
        chebyshev_u_all(std::cos(theta), u);
        for (std::size_t n = 0; n < dim; ++n) out[n] = w * u[n];
      },
      dim, 0.0, kPi);
}

ApproxPolynomial majorant(const Interval& interval, int M) {
  if (M < 1) throw Error(ErrorKind::DomainError, "degree M must be >= 1");
  auto coeffs = u_coefficients([&](double t) { return majorant_direct(interval, M, t); }, M);
  return {M, std::move(coeffs), Side::Majorant, interval};
}

ApproxPolynomial minorant(const Interval& interval, int M) {
  if (M < 1) throw Error(ErrorKind::DomainError, "degree M must be >= 1");
  auto coeffs = u_coefficients([&](double t) { return minorant_direct(interval, M, t); }, M);
  return {M, std::move(coeffs), Side::Minorant, interval};
}

double u_inner_product(int m, int n) {
  return integrate(
      [m, n](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return chebyshev_u(m, c) * chebyshev_u(n, c) * (2.0 / kPi) * s * s;
      },
      0.0, kPi);
}

double fejer_integral_identity(int M, int n, double beta) {
  if (M < 1 || n < 0 || n > M) throw Error(ErrorKind::DomainError, "need M >= 1 and 0 <= n <= M");
  double value = 0.5 * (M - n + 1) * std::cos(2.0 * kPi * n * beta);
  if (n + 2 <= M) value -= 0.5 * (M - n - 1) * std::cos(2.0 * kPi * (n + 2) * beta);
  return value;
}

double fejer_integral_numeric(int M, int n, double beta) {
  return (M + 1) * integrate(
                       [M, n, beta](double x) {
                         const double s = std::sin(2.0 * kPi * x);
                         return fejer(M + 1, x - beta) * chebyshev_u(n, std::cos(2.0 * kPi * x)) * s * s;
                       },
                       -0.5, 0.5);
}

double decay_constant(int M) {
  const auto poly = majorant(Interval(0.0, 1.0 / M), M);
  double worst = 0.0;
  for (double c : poly.coeffs()) worst = std::max(worst, std::abs(c));
  return static_cast<double>(M) * M * worst;
}

double sandwich_violation(const ApproxPolynomial& lower, const ApproxPolynomial& upper, int points,
                          double exclusion) {
  const Interval& I = upper.interval();
  double worst = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double theta = kPi * i / (points - 1);
    if (std::abs(theta - I.alpha) < exclusion || std::abs(theta - I.beta) < exclusion) continue;
    const double chi = I.contains(theta) ? 1.0 : 0.0;
    worst = std::max(worst, lower.direct(theta) - chi);
    worst = std::max(worst, chi - upper.direct(theta));
  }
  return worst;
}

std::vector<BoundCheck> coefficient_checks(const ApproxPolynomial& poly) {
  const int M = poly.degree();
  const Interval& I = poly.interval();
  const std::string tag = poly.side() == Side::Majorant ? "majorant" : "minorant";
  std::vector<BoundCheck> checks;
  const double dev = std::abs(poly.coeffs()[0] - mu_st(I));
  const double constant_bound = 4.0 / (M + 1);
  checks.push_back({tag + ".constant_term", dev, constant_bound, dev <= constant_bound});
  // Worst ratio |F(n)| / bound(n) over 1 <= n <= M.
  double worst_ratio = 0.0;
  for (int n = 1; n <= M; ++n) {
    const double bound = 4.0 * (1.0 / (M + 1) + std::min(I.length() / (2.0 * kPi), 1.0 / (kPi * n)));
    worst_ratio = std::max(worst_ratio, std::abs(poly.coeffs()[n]) / bound);
  }
  checks.push_back({tag + ".coefficients", worst_ratio, 1.0, worst_ratio <= 1.0});
  return checks;
}

std::vector<BoundCheck> verify_approximation(const Interval& interval, int M) {
  std::vector<BoundCheck> checks;
  const auto upper = majorant(interval, M);
  const auto lower = minorant(interval, M);
  for (const auto* poly : {&upper, &lower}) {
    auto part = coefficient_checks(*poly);
    checks.insert(checks.end(), part.begin(), part.end());
  }
  checks.push_back({"constant_term_order", lower.coeffs()[0] - upper.coeffs()[0], 0.0,
                    lower.coeffs()[0] <= upper.coeffs()[0]});

  const double violation = sandwich_violation(lower, upper);
  checks.push_back({"sandwich", violation, 0.0, violation <= 0.0});

  if (interval.alpha == 0.0 && std::abs(interval.beta - 1.0 / M) < 1e-15) {
    const double c8 = decay_constant(8);
    double cm = 0.0;
    for (double c : upper.coeffs()) cm = std::max(cm, std::abs(c));
    cm *= static_cast<double>(M) * M;
    checks.push_back({"decay.M2_max_coefficient", cm, 2.0 * c8, cm <= 2.0 * c8});
  }

  double identity_err = 0.0;
  for (double beta : {0.0, 1.0 / (2.0 * kPi * M)}) {
    for (int n = 0; n <= M; ++n)
      identity_err = std::max(identity_err, std::abs(fejer_integral_identity(M, n, beta) -
                                                     fejer_integral_numeric(M, n, beta)));
  }
  checks.push_back({"fejer_integral_identity", identity_err, 1e-8, identity_err <= 1e-8});

  double ortho = 0.0;
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n) ortho = std::max(ortho, std::abs(u_inner_product(m, n) - (m == n ? 1.0 : 0.0)));
  checks.push_back({"orthonormality", ortho, 1e-9, ortho < 1e-9});
  return checks;
}

}  // namespace extremal
