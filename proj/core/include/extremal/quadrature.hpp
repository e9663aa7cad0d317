#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace extremal {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = 0.0;
  double hi = 0.0;

  /// n-point Gauss-Legendre on [lo, hi]; exact for polynomials of degree 2n-1.
  static QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

  /// `panels` equal panels of n-point Gauss-Legendre each.
  static QuadratureRule composite(std::size_t n, std::size_t panels, double lo, double hi);

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

inline constexpr std::size_t kPanelNodes = 64;
inline constexpr std::size_t kMaxQuadratureNodes = std::size_t{1} << 20;
inline constexpr double kQuadratureTol = 1e-11;

/// Integrates a vector-valued f over [lo, hi] with composite 64-node
/// Gauss-Legendre, doubling the panel count until every component of two
/// successive estimates agrees within kQuadratureTol. f(x, out) adds nothing;
/// it overwrites out[0..dim). Throws QuadratureFailure past 2^20 nodes.
std::vector<double> integrate_vector(const std::function<void(double, double*)>& f, std::size_t dim, double lo,
                                     double hi);

double integrate(const std::function<double(double)>& f, double lo, double hi);

}  // namespace extremal
