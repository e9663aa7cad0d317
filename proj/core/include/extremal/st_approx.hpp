#pragma once

#include <functional>
#include <string>
#include <vector>

namespace extremal {

/// [alpha, beta] inside [0, pi].
struct Interval {
  double alpha;
  double beta;

  Interval(double alpha, double beta);

  double length() const { return beta - alpha; }
  bool contains(double theta) const { return alpha <= theta && theta <= beta; }
};

/// Sato-Tate mass (2/pi) * integral of sin^2 over the interval, closed form.
double mu_st(const Interval& interval);

/// U_n(x) by the three-term recurrence.
double chebyshev_u(int n, double x);

/// U_0(x) .. U_{out.size()-1}(x).
void chebyshev_u_all(double x, std::vector<double>& out);

/// {x} - 1/2 off the integers, 0 on them.
double sawtooth(double x);

/// (1/M) (sin(pi M x) / sin(pi x))^2, equal to M at the integers.
double fejer(int M, double x);

/// 1 + 2 sum_{j=1}^{k} cos(2 pi j x).
double dirichlet(int k, double x);

/// Vaaler's degree-M trigonometric approximation to the sawtooth.
double vaaler(int M, double x);

/// V_M(x) + Delta_{M+1}(x) / (2(M+1)); majorizes the sawtooth.
double beurling(int M, double x);

enum class Side { Majorant, Minorant };

/// Direct (kernel-sum) evaluation of the degree-M majorant / minorant of the
/// indicator of `interval`, as functions of theta in [0, pi].
double majorant_direct(const Interval& interval, int M, double theta);
double minorant_direct(const Interval& interval, int M, double theta);

/// sum_{n=0}^{M} coeffs[n] U_n(cos theta), with coefficients taken against
/// the Sato-Tate probability measure.
class ApproxPolynomial {
 public:
  ApproxPolynomial(int M, std::vector<double> coeffs, Side side, Interval interval);

  int degree() const { return M_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  Side side() const { return side_; }
  const Interval& interval() const { return interval_; }

  /// Clenshaw summation of the U-expansion.
  double operator()(double theta) const;
  /// The same function through the kernel definition.
  double direct(double theta) const;

 private:
  int M_;
  std::vector<double> coeffs_;
  Side side_;
  Interval interval_;
};

/// Coefficients of f against U_0..U_M under mu_ST, by adaptive quadrature.
std::vector<double> u_coefficients(const std::function<double(double)>& f, int M);

ApproxPolynomial majorant(const Interval& interval, int M);

/// 1 minus the majorant of the complement (one or two intervals).
ApproxPolynomial minorant(const Interval& interval, int M);

/// <U_m, U_n> under mu_ST by quadrature.
double u_inner_product(int m, int n);

/// Closed form of (M+1) * integral_{-1/2}^{1/2} Delta_{M+1}(x - beta)
/// U_n(cos 2 pi x) sin^2(2 pi x) dx for 0 <= n <= M.
double fejer_integral_identity(int M, int n, double beta);

/// The same integral by quadrature.
double fejer_integral_numeric(int M, int n, double beta);

/// M^2 * max_n |majorant([0, 1/M], M) coefficient n|.
double decay_constant(int M);

struct BoundCheck {
  std::string name;
  double value;
  double bound;
  bool pass;
};

/// Constant-term and coefficient bounds for one side, as
/// "<side>.constant_term" and "<side>.coefficients" (worst ratio to bound).
std::vector<BoundCheck> coefficient_checks(const ApproxPolynomial& poly);

/// Grid test of minorant <= indicator <= majorant on `points` evenly spaced
/// thetas in [0, pi], skipping points within `exclusion` of an endpoint.
/// Returns the worst violation (<= 0 means the sandwich holds).
double sandwich_violation(const ApproxPolynomial& lower, const ApproxPolynomial& upper, int points = 10000,
                          double exclusion = 1e-6);

/// All coefficient and sandwich inequalities for one (interval, M) pair.
std::vector<BoundCheck> verify_approximation(const Interval& interval, int M);

}  // namespace extremal
