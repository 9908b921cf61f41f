#include "vekua/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace vekua {

namespace {

// P_0..P_{n} at x.
std::vector<double> legendre_values(int n, double x) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (int k = 1; k < n; ++k) p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
  return p;
}

GaussRule build_rule(int n) {
  std::vector<double> x(n);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto p = legendre_values(n, t);
      const double dp = n * (t * p[n] - p[n - 1]) / (t * t - 1.0);
      const double step = p[n] / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const auto p = legendre_values(n, t);
    const double dp = n * (t * p[n] - p[n - 1]) / (t * t - 1.0);
    x[n - 1 - i] = t;
    w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }

  // Lagrange basis on the nodes expanded in Legendre polynomials (exact by the
  // discrete orthogonality of the rule), then integrated term by term:
  //   int_{-1}^{x} P_0 = x + 1,  int_{-1}^{x} P_k = (P_{k+1} - P_{k-1}) / (2k + 1).
  GaussRule rule;
  rule.n = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.cumulative.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<std::vector<double>> pj(n);
  for (int i = 0; i < n; ++i) {
    pj[i] = legendre_values(n, x[i]);
    rule.nodes[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.5 * (x[i] + 1.0);
      for (int k = 1; k < n; ++k) s += 0.5 * pj[j][k] * (pj[i][k + 1] - pj[i][k - 1]);
      // Factor 1/2 maps the [-1, 1] integral to [0, 1].
      rule.cumulative[static_cast<std::size_t>(i) * n + j] = 0.5 * w[j] * s;
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("Gauss-Legendre node count out of range");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

}  // namespace vekua
