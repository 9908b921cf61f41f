#include "doctest.h"
#include "support.hpp"

using namespace vekua;
using namespace vekua::test;

namespace {

EllipticCoefficients laplace() {
  return {ScalarField2::constant(1.0), ScalarField2::constant(0.0), ScalarField2::constant(1.0)};
}

/// p = e^x, u0 = e^y, q from the particular solution.
EllipticCoefficients manufactured() {
  const ScalarField2 p = expr2("exp(x)");
  const ScalarField2 u0 = expr2("exp(y)");
  return {p, manufactured_q(p, u0), u0};
}

/// Best constant c in u ~ c w in the least-squares sense, and the residual.
double fit_residual(const ScalarField2& u, const ScalarField2& w, std::span<const Point2> pts) {
  cplx num{};
  double den = 0.0;
  for (const Point2& p : pts) {
    num += std::conj(w(p)) * u(p);
    den += std::norm(w(p));
  }
  const cplx c = num / den;
  double worst = 0.0;
  for (const Point2& p : pts) worst = std::max(worst, std::abs(u(p) - c * w(p)));
  return worst;
}

}  // namespace

TEST_CASE("manufactured q makes u0 a solution") {
  const EllipticCoefficients c = manufactured();
  // div(e^x grad e^y) = e^{x+y}, so q = -e^x
  std::mt19937_64 rng(1);
  for (const Point2& p : random_points(rng, 10, {0, 0}, 1)) {
    CHECK(std::abs(c.q(p) + std::exp(p[0])) <= 1e-13);
    CHECK(std::abs(div_p_grad_q(c, c.u0, p)) <= 1e-12);
  }
  CHECK_NOTHROW(validate_coefficients(c, square_grid(-1, 1, 5)));
}

TEST_CASE("coefficient validation") {
  EllipticCoefficients c = helmholtz_coefficients();
  CHECK_NOTHROW(validate_coefficients(c, square_grid(-1, 1, 5)));

  c.q = ScalarField2::constant(-2.0);
  CHECK_THROWS_AS(validate_coefficients(c, square_grid(-1, 1, 5)), ResidualCheckError);

  EllipticCoefficients z = laplace();
  z.u0 = expr2("x");
  CHECK_THROWS_AS(validate_coefficients(z, square_grid(-1, 1, 5)), Error);

  EllipticCoefficients cx = laplace();
  cx.p = expr2("1 + i*x");
  cx.q = manufactured_q(cx.p, cx.u0);
  CHECK_THROWS_AS(validate_coefficients(cx, square_grid(-1, 1, 5)), BranchError);
  cx.complex_branch_confirmed = true;
  CHECK_NOTHROW(validate_coefficients(cx, square_grid(-1, 1, 5)));

  // p = -1 - i y wraps p^{1/2} across the principal cut as y changes sign
  EllipticCoefficients cut = laplace();
  cut.p = expr2("-1 - i*y");
  cut.q = manufactured_q(cut.p, cut.u0);
  cut.complex_branch_confirmed = true;
  const std::vector<Point2> path{{0, -0.5}, {0, -0.1}, {0, 0.1}, {0, 0.5}};
  CHECK_THROWS_AS(validate_coefficients(cut, path), BranchError);
}

TEST_CASE("Schrodinger reduction") {
  const Point2 p{0.3, -0.2};
  CHECK(std::abs(schrodinger_reduction(ScalarField2::constant(1.0), expr2("x*y"), p) + 0.3 * -0.2) <= 1e-15);
  CHECK(std::abs(schrodinger_reduction(expr2("exp(2*x)"), ScalarField2::constant(0.0), p) - 1.0) <= 1e-13);
  CHECK(std::abs(schrodinger_reduction(ScalarField2::constant(4.0), ScalarField2::constant(0.0), p)) == 0.0);
}

TEST_CASE("factorization in two dimensions") {
  CHECK(magnitude(factorization_residual_2d(expr2("x^2 - y^2"), laplace(), {0.4, 0.1})) <= 1e-15);

  std::mt19937_64 rng(2);
  const EllipticCoefficients h = helmholtz_coefficients();
  const EllipticCoefficients m = manufactured();
  for (int k = 0; k < 10; ++k) {
    const ScalarField2 phi = random_polynomial<2>(rng, 4);
    for (const Point2& p : random_points(rng, 5, {0, 0}, 0.9)) {
      CHECK(magnitude(factorization_residual_2d(phi, h, p)) <= 1e-10);
      CHECK(magnitude(factorization_residual_2d(phi, m, p)) <= 1e-9);
    }
  }
  CHECK(magnitude(factorization_residual_2d(expr2("x^3*y"), m, {0.5, -0.5})) <= 1e-9);
}

TEST_CASE("associated potential") {
  CHECK(std::abs(associated_potential_q1(laplace(), {0.2, 0.3})) == 0.0);
  const EllipticCoefficients c{ScalarField2::constant(1.0), ScalarField2::constant(-1.0), expr2("exp(y)")};
  CHECK(std::abs(associated_potential_q1(c, {0.2, 0.3}) + 1.0) <= 1e-14);

  EllipticCoefficients m = manufactured();
  const cplx q1 = associated_potential_q1(m, {0.1, 0.4});
  m.u0 = 2.0 * m.u0;
  CHECK(std::abs(associated_potential_q1(m, {0.1, 0.4}) - q1) <= 1e-14);
}

TEST_CASE("conjugate solutions") {
  const EllipticCoefficients l = laplace();
  const Point2 o{0, 0};
  const auto pts = square_grid(-0.8, 0.8, 6);

  const ScalarField2 v = conjugate_solution(expr2("x^2 - y^2"), l, o);
  for (const Point2& p : pts) CHECK(std::abs(v(p) - 2 * p[0] * p[1]) <= 1e-9);
  const ScalarField2 vx = conjugate_solution(expr2("x"), l, o);
  for (const Point2& p : pts) CHECK(std::abs(vx(p) - p[1]) <= 1e-12);
  const ScalarField2 u = inverse_conjugate(expr2("2*x*y"), l, o);
  for (const Point2& p : pts) CHECK(std::abs(u(p) - (p[0] * p[0] - p[1] * p[1])) <= 1e-9);

  // Helmholtz: the vector part of Z^(1)(1, 0; .) is the conjugate of its scalar part
  const EllipticCoefficients h = helmholtz_coefficients();
  const ScalarField2 w = conjugate_solution(expr2("x*exp(y)"), h, o);
  for (const Point2& p : pts) CHECK(std::abs(w(p) - std::sinh(p[1])) <= 1e-9);

  // kernel: d_zbar(u0 v) = 0 for v = 1/u0, so only the c u0 family comes back
  const ScalarField2 kern = inverse_conjugate(expr2("exp(-y)"), h, o);
  for (const Point2& p : pts) CHECK(std::abs(kern(p)) <= 1e-12);
}

TEST_CASE("conjugate round trip and uniqueness classes") {
  const EllipticCoefficients m = manufactured();
  const auto pts = square_grid(-0.7, 0.7, 6);
  // u0 g solves the equation iff div(p u0^2 grad g) = 0; p u0^2 = e^{x+2y} and g = e^{-x}
  const ScalarField2 sol = m.u0 * expr2("exp(-x)");
  for (const Point2& p : pts) CHECK(std::abs(div_p_grad_q(m, sol, p)) <= 1e-12);

  const ScalarField2 v = conjugate_solution(sol, m, {0, 0});
  const ScalarField2 q1 = associated_potential_q1(m);
  const ScalarField2 pinv = reciprocal(m.p);
  for (const Point2& p : pts) {
    // v solves div(p^{-1} grad v) + q1 v = 0
    CHECK(std::abs(div_a_grad(pinv, v, p) + q1(p) * v(p)) <= 1e-6);
  }
  const ScalarField2 back = inverse_conjugate(v, m, {0, 0});
  CHECK(fit_residual(back - sol, m.u0, pts) <= 1e-8);

  // another base point changes v only by c u0^{-1}
  const ScalarField2 v2 = conjugate_solution(sol, m, {0.3, -0.2});
  CHECK(fit_residual(v2 - v, reciprocal(m.u0), pts) <= 1e-9);
}

TEST_CASE("Schrodinger conjugates and divergence form") {
  const Point2 o{0, 0};
  const auto pts = square_grid(-0.8, 0.8, 5);
  const ScalarField2 one = ScalarField2::constant(1.0);
  const ScalarField2 f = expr2("exp(y)");

  const ScalarField2 a = schrodinger_conjugate_W2(expr2("x"), one, o);
  for (const Point2& p : pts) CHECK(std::abs(a(p) - p[1]) <= 1e-12);

  const ScalarField2 kern = schrodinger_conjugate_W2(f, f, o);
  for (const Point2& p : pts) CHECK(std::abs(kern(p)) <= 1e-12);

  const ScalarField2 W2 = schrodinger_conjugate_W2(expr2("x*exp(y)"), f, o);
  for (const Point2& p : pts) CHECK(std::abs(W2(p) - std::sinh(p[1])) <= 1e-9);
  const ScalarField2 W1 = schrodinger_conjugate_W1(W2, f, o);
  for (const Point2& p : pts) CHECK(std::abs(W1(p) - p[0] * std::exp(p[1])) <= 1e-9);

  const ScalarField2 V = divform_conjugate(expr2("x^2 - y^2"), one, o);
  for (const Point2& p : pts) CHECK(std::abs(V(p) - 2 * p[0] * p[1]) <= 1e-9);
  const ScalarField2 Vc = divform_conjugate(ScalarField2::constant(3.0), f, o);
  for (const Point2& p : pts) CHECK(std::abs(Vc(p)) <= 1e-14);

  // U = f^{-1} W1 and V = f W2 for the same pair
  const ScalarField2 Vx = divform_conjugate(expr2("x"), f, o);
  for (const Point2& p : pts) CHECK(std::abs(Vx(p) - f(p) * W2(p)) <= 1e-9);
  const ScalarField2 Ux = divform_conjugate(Vx, f, o, Direction::Inverse);
  for (const Point2& p : pts) CHECK(std::abs(Ux(p) - p[0]) <= 1e-9);
}

TEST_CASE("div-grad conjugation identity") {
  std::mt19937_64 rng(3);
  const EllipticCoefficients m = manufactured();
  CHECK(std::abs(divgrad_conjugation_identity(m, expr2("sin(x)*y"), {0.3, 0.4})) <= 1e-9);
  CHECK(std::abs(divgrad_conjugation_identity(m, m.u0, {0.3, 0.4})) <= 1e-12);
  EllipticCoefficients unit = m;
  unit.u0 = ScalarField2::constant(1.0);
  unit.q = manufactured_q(unit.p, unit.u0);
  for (int k = 0; k < 10; ++k) {
    const ScalarField2 phi = random_smooth<2>(rng);
    for (const Point2& p : random_points(rng, 3, {0, 0}, 0.9)) {
      CHECK(std::abs(divgrad_conjugation_identity(m, phi, p)) <= 1e-9);
      CHECK(std::abs(divgrad_conjugation_identity(unit, phi, p)) <= 1e-12);
    }
  }
}

TEST_CASE("Theorem-style chain for Helmholtz formal powers") {
  const GeneratingSequence seq = helmholtz_sequence();
  const FormalPowerEngine engine(seq, {0, 0}, 3, {Bicomplex(1.0), Bicomplex::k()});
  const EllipticCoefficients c = helmholtz_coefficients();
  const ScalarField2 f = vekua_f(c);
  const ScalarField2 r1 = laplacian(f) / f;
  std::mt19937_64 rng(4);
  for (int n = 0; n <= 3; ++n) {
    for (std::size_t s = 0; s < 2; ++s) {
      const BicomplexField W = engine.field(n, s);
      const ScalarField2 u = reciprocal(sqrt_p(c)) * W.sc();
      for (const Point2& p : random_points(rng, 5, {0, 0}, 0.8)) {
        CHECK(std::abs(schrodinger_residual(W.sc(), r1, p)) <= 1e-6);
        CHECK(std::abs(div_a_grad(f * f, W.sc() / f, p)) <= 1e-6);
        CHECK(std::abs(div_p_grad_q(c, u, p)) <= 1e-6);
      }
    }
  }
}
