#pragma once

// Shared fixtures and independent oracles for the test programs.

#include <cmath>
#include <random>
#include <vector>

#include "vekua/vekua.hpp"

namespace vekua::test {

inline std::vector<Point2> square_grid(double lo, double hi, int n) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.push_back({lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)});
    }
  }
  return out;
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline std::vector<Point2> random_points(std::mt19937_64& rng, int n, Point2 center, double half) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({center[0] + uniform(rng, -half, half), center[1] + uniform(rng, -half, half)});
  }
  return out;
}

inline std::vector<Point3> random_points_3d(std::mt19937_64& rng, int n, double half) {
  std::vector<Point3> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({uniform(rng, -half, half), uniform(rng, -half, half), uniform(rng, -half, half)});
  }
  return out;
}

// --- generators -------------------------------------------------------------

/// Random polynomial of total degree <= degree with coefficients in [-1, 1].
template <int D>
ScalarField<D> random_polynomial(std::mt19937_64& rng, int degree) {
  struct Term {
    std::array<int, 3> e;
    double c;
  };
  std::vector<Term> terms;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      for (int c = 0; a + b + c <= degree; ++c) {
        if (D == 2 && c > 0) break;
        terms.push_back({{a, b, c}, uniform(rng, -1.0, 1.0)});
      }
    }
  }
  return ScalarField<D>::generic([terms](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    T sum(0.0);
    for (const auto& t : terms) {
      T m(t.c);
      for (int v = 0; v < D; ++v) {
        if (t.e[static_cast<std::size_t>(v)] > 0) {
          m = m * elem::ipow(p[static_cast<std::size_t>(v)], t.e[static_cast<std::size_t>(v)]);
        }
      }
      sum = sum + m;
    }
    return sum;
  });
}

/// Polynomial plus a trigonometric and an exponential plane wave.
template <int D>
ScalarField<D> random_smooth(std::mt19937_64& rng) {
  const ScalarField<D> poly = random_polynomial<D>(rng, 3);
  std::array<double, D> b{}, d{};
  for (auto& v : b) v = uniform(rng, -2.0, 2.0);
  for (auto& v : d) v = uniform(rng, -0.5, 0.5);
  const double a = uniform(rng, -1.0, 1.0);
  const double c = uniform(rng, -1.0, 1.0);
  return poly + ScalarField<D>::generic([a, b, c, d](const auto& p) {
           using T = std::decay_t<decltype(p[0])>;
           T l1(0.0), l2(0.0);
           for (int v = 0; v < D; ++v) {
             l1 = l1 + p[static_cast<std::size_t>(v)] * b[static_cast<std::size_t>(v)];
             l2 = l2 + p[static_cast<std::size_t>(v)] * d[static_cast<std::size_t>(v)];
           }
           return elem::sin(l1) * a + elem::exp(l2) * c;
         });
}

// --- presets ------------------------------------------------------------------

inline ScalarField2 expr2(const char* text, const Bindings& b = {}) {
  std::set<std::string> names;
  for (const auto& [k, v] : b) names.insert(k);
  return ScalarField2::from_expr(parse(text, names), b);
}

inline ScalarField3 expr3(const char* text, const Bindings& b = {}) {
  std::set<std::string> names;
  for (const auto& [k, v] : b) names.insert(k);
  return ScalarField3::from_expr(parse(text, names), b);
}

/// f = e^{c y} through rho = y.
inline GeneratingSequence helmholtz_sequence(double c = 1.0) {
  ConditionSData d = condition_s_preset(ConditionSPreset::CartesianY);
  d.f_of_rho = parse("exp(c*rho)", {"c"});
  d.params = {{"c", c}};
  const auto grid = square_grid(-1.0, 1.0, 9);
  return build_sequence_condition_s(d, grid);
}

inline EllipticCoefficients helmholtz_coefficients(double c = 1.0) {
  return {ScalarField2::constant(1.0), ScalarField2::constant(-c * c), expr2("exp(c*y)", {{"c", c}})};
}

inline const Point2 kRadialCenter{1.5, 0.5};

/// f = rho = |z| around (1.5, 0.5).
inline GeneratingSequence radial_sequence() {
  ConditionSData d = condition_s_preset(ConditionSPreset::Radial);
  d.f_of_rho = parse("rho");
  std::vector<Point2> grid;
  for (const auto& p : square_grid(-0.5, 0.5, 7)) grid.push_back({kRadialCenter[0] + p[0], kRadialCenter[1] + p[1]});
  return build_sequence_condition_s(d, grid);
}

/// Pair (1, k): f = 1 through rho = x.
inline GeneratingSequence trivial_sequence() {
  ConditionSData d = condition_s_preset(ConditionSPreset::CartesianX);
  d.f_of_rho = parse("1");
  const auto grid = square_grid(-1.0, 1.0, 5);
  return build_sequence_condition_s(d, grid);
}

// --- closed forms of the Helmholtz example ------------------------------------

/// Z^(n)(1, 0; z) and Z^(n)(k, 0; z) for f = e^{c y}, n <= 2.
inline Bicomplex helmholtz_power(int n, bool seed_k, const Point2& p, double c = 1.0) {
  const double x = p[0], y = p[1];
  const double e = std::exp(c * y), em = std::exp(-c * y), sh = std::sinh(c * y);
  switch (n * 2 + (seed_k ? 1 : 0)) {
    case 0: return {e, 0.0};
    case 1: return {0.0, em};
    case 2: return {x * e, sh / c};
    case 3: return {-sh / c, x * em};
    case 4: return {(x * x - y / c) * e + sh / (c * c), 2.0 * x * sh / c};
    case 5: return {-2.0 * x * sh / c, (x * x + y / c) * em - sh / (c * c)};
  }
  return {};
}

/// (z - z0)^n with z = x + k y.
inline Bicomplex z_power(const Point2& p, const Point2& z0, int n) {
  const Bicomplex z{p[0] - z0[0], p[1] - z0[1]};
  Bicomplex r(1.0);
  for (int j = 0; j < n; ++j) r = r * z;
  return r;
}

/// Least-squares slope of log(err) against log(r).
inline double loglog_slope(const std::vector<double>& r, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = std::log(r[i]), b = std::log(err[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Smallest log-log slope of |Z^(n)(a, z0; z) - a (z - z0)^n| over radii
/// 2^-3 .. 2^-9 along a few rays.
inline double asymptotic_slope(const GeneratingSequence& seq, const Point2& z0, int n, const Bicomplex& a) {
  const FormalPowerEngine engine(seq, z0, n, {a});
  double worst = 1e300;
  for (double angle : {0.3, 1.9, 4.1}) {
    std::vector<double> radii, err;
    for (int e = 3; e <= 9; ++e) {
      const double r = std::ldexp(1.0, -e);
      const Point2 p{z0[0] + r * std::cos(angle), z0[1] + r * std::sin(angle)};
      const Bicomplex z = engine.evaluate(p)[static_cast<std::size_t>(n)];
      radii.push_back(r);
      err.push_back(magnitude(z - a * z_power(p, z0, n)));
    }
    worst = std::min(worst, loglog_slope(radii, err));
  }
  return worst;
}

/// Central differences of a scalar field, step h.
struct FiniteDifference2 {
  cplx dx, dy, dxx, dyy, dxy;
};

inline FiniteDifference2 central_difference(const ScalarField2& f, const Point2& p, double h) {
  auto at = [&](double a, double b) { return f({p[0] + a, p[1] + b}); };
  const cplx c = at(0, 0);
  return {(at(h, 0) - at(-h, 0)) / (2 * h), (at(0, h) - at(0, -h)) / (2 * h),
          (at(h, 0) - 2.0 * c + at(-h, 0)) / (h * h), (at(0, h) - 2.0 * c + at(0, -h)) / (h * h),
          (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h)};
}

inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace vekua::test
