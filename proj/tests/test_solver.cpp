#include "doctest.h"
#include "support.hpp"

using namespace vekua;
using namespace vekua::test;

namespace {

DirichletProblem helmholtz_problem(int N, const char* g = "exp(x)") {
  DirichletProblem pr{helmholtz_coefficients(), helmholtz_sequence()};
  pr.domain = Domain::disk(1.0);
  pr.boundary_data = expr2(g);
  pr.N = N;
  return pr;
}

DirichletProblem laplace_problem(int N) {
  DirichletProblem pr{{ScalarField2::constant(1.0), ScalarField2::constant(0.0), ScalarField2::constant(1.0)},
                      trivial_sequence()};
  pr.domain = Domain::ellipse(1.2, 0.8);
  pr.boundary_data = expr2("x^3 - 3*x*y^2");
  pr.N = N;
  return pr;
}

double max_error(const SolutionExpansion& s, const char* exact, const Domain& d) {
  return error_report(s, expr2(exact), interior_grid(d)).max_error;
}

}  // namespace

TEST_CASE("domains") {
  const Domain e = Domain::ellipse(2.0, 1.0, {1.0, -1.0});
  CHECK(e.boundary(0.0)[0] == doctest::Approx(3.0));
  CHECK(e.boundary(std::numbers::pi / 2)[1] == doctest::Approx(0.0));
  CHECK(boundary_points(e, 8).size() == 8);
  CHECK(interior_grid(e, 40, 64).size() == 40 * 64);
  CHECK_THROWS_AS(Domain::disk(-1.0), Error);

  const Domain star = Domain::radial(parse("1 + 0.3*cos(3*t)"));
  CHECK_NOTHROW(check_star_shaped(star, {0, 0}));
  CHECK_THROWS_AS(check_star_shaped(Domain::disk(1.0), {2.0, 0.0}), Error);
  CHECK_THROWS_AS(Domain::radial(parse("x + t")), Error);
}

TEST_CASE("Helmholtz basis matches the closed forms") {
  const auto basis = build_basis(helmholtz_problem(5), 5);
  REQUIRE(basis->size() == 5);
  CHECK(basis->notes().size() == 1);  // Sc Z^(0)(k) vanishes
  std::mt19937_64 rng(1);
  for (const Point2& p : random_points(rng, 20, {0, 0}, 0.7)) {
    const double x = p[0], y = p[1];
    const auto v = basis->values(p);
    CHECK(std::abs(v[0] - std::exp(y)) <= 1e-12);
    CHECK(std::abs(v[1] - x * std::exp(y)) <= 1e-10);
    CHECK(std::abs(v[2] + std::sinh(y)) <= 1e-10);
    CHECK(std::abs(v[3] - ((x * x - y) * std::exp(y) + std::sinh(y))) <= 1e-10);
    CHECK(std::abs(v[4] + 2 * x * std::sinh(y)) <= 1e-10);
  }
}

TEST_CASE("Laplace basis is the harmonic polynomials") {
  const auto basis = build_basis(laplace_problem(7), 7);
  REQUIRE(basis->size() == 7);
  const Point2 p{0.3, -0.6};
  const auto v = basis->values(p);
  const std::complex<double> z(p[0], p[1]);
  CHECK(std::abs(v[0] - 1.0) <= 1e-14);
  for (int n = 1; n <= 3; ++n) {
    const auto zn = std::pow(z, n);
    CHECK(std::abs(v[static_cast<std::size_t>(2 * n - 1)] - zn.real()) <= 1e-12);
    CHECK(std::abs(v[static_cast<std::size_t>(2 * n)] + zn.imag()) <= 1e-12);
  }
}

TEST_CASE("single basis function is u0") {
  const auto basis = build_basis(helmholtz_problem(1), 1);
  REQUIRE(basis->size() == 1);
  CHECK(std::abs(basis->values({0.2, 0.5})[0] - std::exp(0.5)) <= 1e-14);
}

TEST_CASE("basis functions solve the equation") {
  const DirichletProblem pr = helmholtz_problem(9);
  const auto basis = build_basis(pr, 9);
  std::mt19937_64 rng(2);
  std::vector<Point2> pts;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.95 * std::sqrt(uniform(rng, 0, 1)), t = uniform(rng, 0, 2 * std::numbers::pi);
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  for (int m = 0; m < basis->size(); ++m) {
    const ScalarField2 u = basis->field(m);
    double worst = 0.0;
    for (const Point2& p : pts) worst = std::max(worst, std::abs(div_p_grad_q(pr.coeffs, u, p)));
    CHECK_MESSAGE(worst <= 1e-6, "basis function " << m);
  }
}

TEST_CASE("basis functions as data give unit coefficient vectors") {
  DirichletProblem pr = helmholtz_problem(9);
  const auto basis = build_basis(pr, 9);
  for (int m = 0; m < basis->size(); ++m) {
    pr.boundary_data = basis->field(m);
    const SolutionExpansion s = solve_collocation(pr);
    double dev = 0.0;
    for (int j = 0; j < basis->size(); ++j) {
      dev = std::max(dev, std::abs(s.coefficients[static_cast<std::size_t>(j)] - (j == m ? 1.0 : 0.0)));
    }
    CHECK_MESSAGE(dev <= 1e-10, "basis function " << m);
  }
}

TEST_CASE("trivial data and expansions") {
  DirichletProblem pr = helmholtz_problem(5, "exp(y)");
  const SolutionExpansion s = solve_collocation(pr);
  CHECK(std::abs(s.coefficients[0] - 1.0) <= 1e-12);
  for (std::size_t j = 1; j < s.coefficients.size(); ++j) CHECK(std::abs(s.coefficients[j]) <= 1e-12);
  CHECK(s.boundary_max_residual <= 1e-12);
  CHECK(std::abs(evaluate_expansion(s, {0, 0}) - 1.0) <= 1e-12);

  pr.boundary_data = ScalarField2::constant(0.0);
  const SolutionExpansion zero = solve_collocation(pr);
  for (const cplx a : zero.coefficients) CHECK(a == cplx(0.0));
  CHECK(evaluate_expansion(zero, {0.3, 0.1}) == cplx(0.0));

  // a complex-valued boundary function is split into two real problems
  pr.boundary_data = expr2("exp(y) + i*x*exp(y)");
  const SolutionExpansion c = solve_collocation(pr);
  CHECK(std::abs(c.coefficients[0] - 1.0) <= 1e-12);
  CHECK(std::abs(c.coefficients[1] - cplx(0, 1)) <= 1e-12);

  const ScalarField2 self = ScalarField2::generic([s](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    if constexpr (std::is_same_v<T, cplx>) return evaluate_expansion(s, {p[0].real(), p[1].real()});
    else return T(0.0);
  });
  CHECK(error_report(s, self, interior_grid(pr.domain, 5, 8)).max_error == 0.0);
}

TEST_CASE("problem validation") {
  DirichletProblem pr = helmholtz_problem(9);
  pr.M = 5;
  CHECK_THROWS_AS(solve_collocation(pr), Error);

  DirichletProblem off = helmholtz_problem(5);
  off.z0 = {1.5, 0.0};
  CHECK_THROWS_AS(solve_collocation(off), Error);

  // f of the sequence must be p^{1/2} u0
  DirichletProblem wrong{helmholtz_coefficients(2.0), helmholtz_sequence(1.0)};
  wrong.domain = Domain::disk(1.0);
  wrong.boundary_data = expr2("exp(x)");
  wrong.N = 5;
  CHECK_THROWS_AS(solve_collocation(wrong), Error);
}

TEST_CASE("Helmholtz benchmark improves with N") {
  double prev = 1e300;
  for (int N : {5, 9, 13}) {
    const SolutionExpansion s = solve_collocation(helmholtz_problem(N));
    const double err = max_error(s, "exp(x)", Domain::disk(1.0));
    CHECK(err < prev);
    prev = err;
    CHECK_FALSE(s.rank_deficient);
  }
  CHECK(prev <= 1e-3);

  const SolutionExpansion l = solve_collocation(laplace_problem(9));
  CHECK(max_error(l, "x^3 - 3*x*y^2", Domain::ellipse(1.2, 0.8)) <= 1e-12);
}

TEST_CASE("thread count does not change the result") {
  DirichletProblem a = helmholtz_problem(9);
  a.threads = 1;
  DirichletProblem b = helmholtz_problem(9);
  b.threads = 4;
  const SolutionExpansion sa = solve_collocation(a), sb = solve_collocation(b);
  REQUIRE(sa.coefficients.size() == sb.coefficients.size());
  for (std::size_t j = 0; j < sa.coefficients.size(); ++j) CHECK(sa.coefficients[j] == sb.coefficients[j]);
}
