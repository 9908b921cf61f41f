#pragma once

// Factorization of div p grad + q through a particular solution u0 and the
// transforms between its solutions and solutions of the main Vekua equation
// with f = p^{1/2} u0.

#include <span>

#include "vekua/calculus.hpp"
#include "vekua/field.hpp"

namespace vekua {

struct EllipticCoefficients {
  ScalarField2 p;
  ScalarField2 q;
  ScalarField2 u0;
  /// Non-real p is only accepted once the caller confirms that the principal
  /// branch of p^{1/2} is the intended one.
  bool complex_branch_confirmed = false;
};

/// q := -div(p grad u0) / u0, which makes u0 an exact particular solution.
ScalarField2 manufactured_q(const ScalarField2& p, const ScalarField2& u0);

/// Principal branch of p^{1/2}.
ScalarField2 sqrt_p(const EllipticCoefficients& c);
/// f = p^{1/2} u0.
ScalarField2 vekua_f(const EllipticCoefficients& c);

/// div(a grad u) + b u at a point, from exact jets.
cplx div_a_grad(const ScalarField2& a, const ScalarField2& u, const Point2& pt);
cplx div_p_grad_q(const EllipticCoefficients& c, const ScalarField2& u, const Point2& pt);
/// -Laplacian(w) + r w.
cplx schrodinger_residual(const ScalarField2& w, const ScalarField2& r, const Point2& pt);

struct CoefficientCheckOptions {
  double floor = 1e-12;        // |p| and |u0| must exceed this
  double residual_tol = 1e-6;  // |(div p grad + q) u0| relative to 1 + |p Laplacian u0|
};

/// Checks nonvanishing p and u0, the particular-solution residual, realness
/// of p (or the branch confirmation) and continuity of p^{1/2} along the
/// polyline through `path`. Throws Error / ResidualCheckError / BranchError.
void validate_coefficients(const EllipticCoefficients& c, std::span<const Point2> path,
                           const CoefficientCheckOptions& opt = {});

/// r = Laplacian(p^{1/2}) / p^{1/2} - q / p.
cplx schrodinger_reduction(const ScalarField2& p, const ScalarField2& q, const Point2& pt);

/// 1/4 (div p grad + q) phi - p^{1/2} (d_z + b C)(d_zbar - b C)(p^{1/2} phi),
/// b = f_zbar / f.
Bicomplex factorization_residual_2d(const ScalarField2& phi, const EllipticCoefficients& c,
                                    const Point2& pt);

/// q1 = -(1/p) (q/p + 2 <grad p / p, grad u0 / u0> + 2 (grad u0 / u0)^2).
cplx associated_potential_q1(const EllipticCoefficients& c, const Point2& pt);
ScalarField2 associated_potential_q1(const EllipticCoefficients& c);

/// v = u0^{-1} Abar(k p u0^2 d_zbar(u0^{-1} u)); unique up to c u0^{-1}.
ScalarField2 conjugate_solution(const ScalarField2& u, const EllipticCoefficients& c,
                                const Point2& base, const AntiderivativeOptions& opt = {});

/// u = -u0 Abar(k p^{-1} u0^{-2} d_zbar(u0 v)); unique up to c u0.
ScalarField2 inverse_conjugate(const ScalarField2& v, const EllipticCoefficients& c,
                               const Point2& base, const AntiderivativeOptions& opt = {});

/// W2 = f^{-1} Abar(k f^2 d_zbar(f^{-1} W1)); unique up to c f^{-1}.
ScalarField2 schrodinger_conjugate_W2(const ScalarField2& W1, const ScalarField2& f,
                                      const Point2& base, const AntiderivativeOptions& opt = {});

/// W1 = -f Abar(k f^{-2} d_zbar(f W2)); unique up to c f.
ScalarField2 schrodinger_conjugate_W1(const ScalarField2& W2, const ScalarField2& f,
                                      const Point2& base, const AntiderivativeOptions& opt = {});

enum class Direction { Forward, Inverse };

/// Forward: V = Abar(k f^2 U_zbar). Inverse: U = -Abar(k f^{-2} V_zbar).
ScalarField2 divform_conjugate(const ScalarField2& in, const ScalarField2& f, const Point2& base,
                               Direction dir = Direction::Forward,
                               const AntiderivativeOptions& opt = {});

/// (div p grad + q) phi - u0^{-1} div(p u0^2 grad(u0^{-1} phi)).
cplx divgrad_conjugation_identity(const EllipticCoefficients& c, const ScalarField2& phi,
                                  const Point2& pt);

}  // namespace vekua
