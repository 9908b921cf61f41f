#pragma once

#include <vector>

#include "vekua/bicomplex.hpp"
#include "vekua/error.hpp"

namespace vekua {

struct QuadratureOptions {
  int nodes = 16;
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_panels = 1024;
};

/// Gauss-Legendre rule mapped to [0, 1], with the cumulative integration
/// matrix cumulative[i * n + j] = integral over [0, x_i] of the j-th Lagrange
/// basis polynomial.
struct GaussRule {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> cumulative;
};

/// Cached per node count; safe to call from several threads.
const GaussRule& gauss_legendre(int n);

/// Composite rule with `panels` equal panels on [0, 1].
template <class V, class Fn>
V integrate_composite(Fn&& f, int panels, const GaussRule& rule) {
  V total{};
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < rule.n; ++i) {
      total += f(h * (p + rule.nodes[i])) * (h * rule.weights[i]);
    }
  }
  return total;
}

/// Integral of f over [0, 1]; doubles the panel count until two successive
/// results agree to rel_tol (or abs_tol). Throws QuadratureError at the cap.
template <class V, class Fn>
V integrate_adaptive(Fn&& f, const QuadratureOptions& opt = {}, int* panels_used = nullptr) {
  const GaussRule& rule = gauss_legendre(opt.nodes);
  V prev = integrate_composite<V>(f, 1, rule);
  for (int panels = 2; panels <= opt.max_panels; panels *= 2) {
    V next = integrate_composite<V>(f, panels, rule);
    const double diff = magnitude(next - prev);
    if (diff <= opt.rel_tol * magnitude(next) || diff <= opt.abs_tol) {
      if (panels_used) *panels_used = panels;
      return next;
    }
    prev = std::move(next);
  }
  throw QuadratureError("quadrature did not converge within " + std::to_string(opt.max_panels) +
                        " panels");
}

}  // namespace vekua
