#include "extremal/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"

namespace extremal {

QuadratureRule QuadratureRule::gauss_legendre(std::size_t n, double lo, double hi) {
  QuadratureRule rule;
  rule.lo = lo;
  rule.hi = hi;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule QuadratureRule::composite(std::size_t n, std::size_t panels, double lo, double hi) {
  QuadratureRule base = gauss_legendre(n, -1.0, 1.0);
  QuadratureRule rule;
  rule.lo = lo;
  rule.hi = hi;
  rule.nodes.reserve(n * panels);
  rule.weights.reserve(n * panels);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    double a = lo + width * static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) {
      rule.nodes.push_back(a + 0.5 * width * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

std::vector<double> integrate_vector(const std::function<void(double, double*)>& f, std::size_t dim, double lo,
                                     double hi) {
  std::vector<double> prev, cur(dim), vals(dim);
  for (std::size_t panels = 1; panels * kPanelNodes <= kMaxQuadratureNodes; panels *= 2) {
    QuadratureRule rule = QuadratureRule::composite(kPanelNodes, panels, lo, hi);
    std::fill(cur.begin(), cur.end(), 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      f(rule.nodes[i], vals.data());
      for (std::size_t d = 0; d < dim; ++d) cur[d] += rule.weights[i] * vals[d];
    }
    if (!prev.empty()) {
      double diff = 0.0;
      for (std::size_t d = 0; d < dim; ++d) diff = std::max(diff, std::abs(cur[d] - prev[d]));
      if (diff < kQuadratureTol) return cur;
    }
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureFailure, "no convergence within 2^20 nodes");
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  return integrate_vector([&f](double x, double* out) { out[0] = f(x); }, 1, lo, hi)[0];
}

}  // namespace extremal
