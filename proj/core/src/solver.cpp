#include "vekua/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>

#include "vekua/error.hpp"
#include "vekua/parallel.hpp"

namespace vekua {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Domain Domain::disk(double radius, Point2 center) {
  if (!(radius > 0.0)) throw Error("disk radius must be positive");
  Domain d;
  d.kind = Kind::Disk;
  d.radius = radius;
  d.center = center;
  return d;
}

Domain Domain::ellipse(double a, double b, Point2 center) {
  if (!(a > 0.0 && b > 0.0)) throw Error("ellipse semi-axes must be positive");
  Domain d;
  d.kind = Kind::Ellipse;
  d.a = a;
  d.b = b;
  d.center = center;
  return d;
}

Domain Domain::radial(Expr r_of_t, Bindings params, Point2 center) {
  const Expr bound = r_of_t.bind(params);
  for (Var v : bound.variables()) {
    if (v != Var::T) throw Error("radial boundary r(t) may only depend on t, found '" + to_string(v) + "'");
  }
  Domain d;
  d.kind = Kind::Radial;
  d.r_of_t = bound;
  d.center = center;
  return d;
}

Point2 Domain::offset(double theta) const {
  switch (kind) {
    case Kind::Disk:
      return {radius * std::cos(theta), radius * std::sin(theta)};
    case Kind::Ellipse:
      return {a * std::cos(theta), b * std::sin(theta)};
    case Kind::Radial: {
      VarValues<cplx> v;
      v.set(Var::T, theta);
      const cplx r = r_of_t.evaluate(v, &params);
      if (std::abs(r.imag()) > 1e-12 * std::abs(r) || !(r.real() > 0.0)) {
        throw Error("radial boundary r(t) must be real and positive (t = " + std::to_string(theta) + ")");
      }
      return {r.real() * std::cos(theta), r.real() * std::sin(theta)};
    }
  }
  return {};
}

Point2 Domain::boundary(double theta) const {
  const Point2 o = offset(theta);
  return {center[0] + o[0], center[1] + o[1]};
}

std::vector<Point2> boundary_points(const Domain& d, int M) {
  std::vector<Point2> out(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) out[static_cast<std::size_t>(j)] = d.boundary(kTwoPi * j / M);
  return out;
}

std::vector<Point2> interior_grid(const Domain& d, int radii, int angles) {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(radii) * static_cast<std::size_t>(angles));
  for (int i = 1; i <= radii; ++i) {
    const double s = static_cast<double>(i) / radii;
    for (int j = 0; j < angles; ++j) {
      const Point2 o = d.offset(kTwoPi * j / angles);
      out.push_back({d.center[0] + s * o[0], d.center[1] + s * o[1]});
    }
  }
  return out;
}

void check_star_shaped(const Domain& d, const Point2& z0, int samples) {
  double total = 0.0;
  Point2 prev = d.boundary(0.0);
  for (int j = 1; j <= samples; ++j) {
    const Point2 cur = d.boundary(kTwoPi * j / samples);
    const double ax = prev[0] - z0[0];
    const double ay = prev[1] - z0[1];
    const double bx = cur[0] - z0[0];
    const double by = cur[1] - z0[1];
    const double cross = ax * by - ay * bx;
    if (!(cross > 0.0)) {
      throw Error("domain is not star-shaped with respect to the center z0 (boundary sample " +
                  std::to_string(j) + ")");
    }
    total += std::atan2(cross, ax * bx + ay * by);
    prev = cur;
  }
  if (std::abs(total - kTwoPi) > 1e-6) throw Error("center z0 is not inside the domain");
}

// ---------------------------------------------------------------------------

Basis::Basis(const DirichletProblem& problem, int N) {
  if (N < 1) throw Error("basis size must be at least 1");
  const int n_max = N / 2;
  engine_ = std::make_shared<const FormalPowerEngine>(
      problem.sequence, problem.z0, n_max, std::vector<Bicomplex>{Bicomplex(1.0), Bicomplex::k()}, 0,
      problem.powers);
  const ScalarField2 sp = sqrt_p(problem.coeffs);
  inv_sqrt_p_ = reciprocal(sp);

  const int M = problem.M > 0 ? problem.M : 4 * N;
  const std::vector<Point2> pts = boundary_points(problem.domain, M);

  if (problem.sequence.f()) {
    const ScalarField2 f = *problem.sequence.f();
    for (const Point2& p : pts) {
      const cplx expect = sp(p) * problem.coeffs.u0(p);
      if (std::abs(f(p) - expect) > 1e-8 * std::max(1.0, std::abs(expect))) {
        throw Error("f of the generating sequence differs from p^(1/2) u0 at (" +
                    std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")");
      }
    }
  }

  // A candidate is dropped when its scalar part is negligible next to the
  // whole formal power it comes from, on every boundary sample.
  const std::size_t per = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<double>> sc(pts.size()), full(pts.size());
  parallel_for(pts.size(), problem.threads, [&](std::size_t i) {
    const std::vector<Bicomplex> z = engine_->evaluate(pts[i]);
    const double w = std::abs(inv_sqrt_p_(pts[i]));
    sc[i].resize(2 * per);
    full[i].resize(2 * per);
    for (std::size_t n = 0; n < per; ++n) {
      for (std::size_t s = 0; s < 2; ++s) {
        const Bicomplex& v = z[s * per + n];
        sc[i][2 * n + s] = std::abs(v.sc) * w;
        full[i][2 * n + s] = magnitude(v) * w;
      }
    }
  });
  for (std::size_t c = 0; c < 2 * per && static_cast<int>(terms_.size()) < N; ++c) {
    const BasisTerm t{static_cast<int>(c / 2), c % 2 == 1};
    double sc_max = 0.0, full_max = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sc_max = std::max(sc_max, sc[i][c]);
      full_max = std::max(full_max, full[i][c]);
    }
    if (sc_max <= 1e-13 * full_max) {
      notes_.push_back("dropped p^(-1/2) Sc Z^(" + std::to_string(t.n) + ")(" + (t.seed_k ? "k" : "1") +
                       "): identically zero on the boundary samples");
      continue;
    }
    terms_.push_back(t);
  }
  if (static_cast<int>(terms_.size()) < N) {
    throw Error("only " + std::to_string(terms_.size()) + " nonvanishing basis functions available");
  }
}

std::vector<cplx> Basis::all_values(const Point2& p) const {
  const std::vector<Bicomplex> z = engine_->evaluate(p);
  const std::size_t per = static_cast<std::size_t>(engine_->n_max()) + 1;
  const cplx w = inv_sqrt_p_(p);
  std::vector<cplx> out(2 * per);
  for (std::size_t n = 0; n < per; ++n) {
    out[2 * n] = z[n].sc * w;
    out[2 * n + 1] = z[per + n].sc * w;
  }
  return out;
}

std::vector<cplx> Basis::values(const Point2& p) const {
  const std::vector<cplx> all = all_values(p);
  std::vector<cplx> out(terms_.size());
  for (std::size_t m = 0; m < terms_.size(); ++m) {
    out[m] = all[2 * static_cast<std::size_t>(terms_[m].n) + (terms_[m].seed_k ? 1 : 0)];
  }
  return out;
}

ScalarField2 Basis::field(int m) const {
  const BasisTerm& t = terms_.at(static_cast<std::size_t>(m));
  return engine_->field(t.n, t.seed_k ? 1 : 0).sc() * inv_sqrt_p_;
}

std::shared_ptr<const Basis> build_basis(const DirichletProblem& problem, int N) {
  return std::make_shared<const Basis>(problem, N);
}

// ---------------------------------------------------------------------------

SolutionExpansion solve_collocation(const DirichletProblem& problem) {
  const int N = problem.N;
  const int M = problem.M > 0 ? problem.M : 4 * N;
  if (M < N) throw Error("collocation count M must be at least N");
  check_star_shaped(problem.domain, problem.z0);

  SolutionExpansion out;
  out.basis = build_basis(problem, N);
  out.warnings = out.basis->notes();

  const std::vector<Point2> pts = boundary_points(problem.domain, M);
  std::vector<std::vector<cplx>> rows(pts.size());
  std::vector<cplx> g(pts.size());
  parallel_for(pts.size(), problem.threads, [&](std::size_t i) {
    rows[i] = out.basis->values(pts[i]);
    g[i] = problem.boundary_data(pts[i]);
  });

  double amax = 0.0;
  double aimag = 0.0;
  for (const auto& r : rows) {
    for (const cplx& v : r) {
      amax = std::max(amax, std::abs(v));
      aimag = std::max(aimag, std::abs(v.imag()));
    }
  }
  const bool real_basis = aimag <= 1e-13 * std::max(1.0, amax);

  // Real basis: one real system with two right-hand sides (Re g, Im g).
  // Complex basis: stacked real form of the complex system.
  const Eigen::Index rows_n = real_basis ? M : 2 * M;
  const Eigen::Index cols_n = real_basis ? N : 2 * N;
  Eigen::MatrixXd A(rows_n, cols_n);
  Eigen::MatrixXd B(rows_n, real_basis ? 2 : 1);
  for (int i = 0; i < M; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (real_basis) {
      for (int j = 0; j < N; ++j) A(i, j) = r[static_cast<std::size_t>(j)].real();
      B(i, 0) = g[static_cast<std::size_t>(i)].real();
      B(i, 1) = g[static_cast<std::size_t>(i)].imag();
    } else {
      for (int j = 0; j < N; ++j) {
        const cplx v = r[static_cast<std::size_t>(j)];
        A(i, j) = v.real();
        A(i, N + j) = -v.imag();
        A(M + i, j) = v.imag();
        A(M + i, N + j) = v.real();
      }
      B(i, 0) = g[static_cast<std::size_t>(i)].real();
      B(M + i, 0) = g[static_cast<std::size_t>(i)].imag();
    }
  }

  Eigen::VectorXd scale(cols_n);
  for (Eigen::Index j = 0; j < cols_n; ++j) {
    const double nrm = A.col(j).norm();
    scale(j) = nrm > 0.0 ? 1.0 / nrm : 1.0;
    A.col(j) *= scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  out.condition_number = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(out.condition_number <= problem.rank_threshold)) {
    out.rank_deficient = true;
    out.warnings.push_back("RankDeficient: equilibrated condition number " +
                           std::to_string(out.condition_number) + " exceeds " +
                           std::to_string(problem.rank_threshold));
  }
  const Eigen::MatrixXd X = scale.asDiagonal() * svd.solve(B);

  out.coefficients.assign(static_cast<std::size_t>(N), cplx{});
  for (int j = 0; j < N; ++j) {
    out.coefficients[static_cast<std::size_t>(j)] =
        real_basis ? cplx(X(j, 0), X(j, 1)) : cplx(X(j, 0), X(N + j, 0));
  }

  double sq = 0.0;
  for (int i = 0; i < M; ++i) {
    cplx s{};
    const auto& r = rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < N; ++j) s += out.coefficients[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(j)];
    const double e = std::abs(s - g[static_cast<std::size_t>(i)]);
    out.boundary_max_residual = std::max(out.boundary_max_residual, e);
    sq += e * e;
  }
  out.boundary_rms_residual = std::sqrt(sq / M);
  return out;
}

cplx evaluate_expansion(const SolutionExpansion& s, const Point2& p) {
  if (!s.basis || s.coefficients.empty()) return {};
  const std::vector<cplx> v = s.basis->values(p);
  cplx sum{};
  for (std::size_t j = 0; j < v.size(); ++j) sum += s.coefficients[j] * v[j];
  return sum;
}

ErrorReport error_report(const SolutionExpansion& s, const ScalarField2& exact,
                         std::span<const Point2> grid, unsigned threads) {
  ErrorReport rep;
  rep.rows.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const cplx a = evaluate_expansion(s, grid[i]);
    const cplx e = exact(grid[i]);
    rep.rows[i] = {grid[i], a, e, std::abs(a - e)};
  });
  double sq = 0.0;
  for (const auto& r : rep.rows) {
    rep.max_error = std::max(rep.max_error, r.error);
    sq += r.error * r.error;
  }
  if (!rep.rows.empty()) rep.rms_error = std::sqrt(sq / static_cast<double>(rep.rows.size()));
  return rep;
}

}  // namespace vekua
