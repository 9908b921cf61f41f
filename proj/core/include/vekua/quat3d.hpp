#pragma once

// Complex quaternions Q = Q0 + Q1 i + Q2 j + Q3 k (complex Q_n, the
// imaginary unit commuting with i, j, k), the Moisil-Teodorescu operator
// D = i d/dx + j d/dy + k d/dz3 acting from the left, the antigradient and
// the 3D factorizations and transforms.

#include <array>
#include <iosfwd>
#include <span>

#include "vekua/field.hpp"
#include "vekua/quadrature.hpp"

namespace vekua {

template <class T>
struct QuaternionT {
  std::array<T, 4> c{T(0.0), T(0.0), T(0.0), T(0.0)};

  QuaternionT() = default;
  QuaternionT(T q0, T q1, T q2, T q3) : c{std::move(q0), std::move(q1), std::move(q2), std::move(q3)} {}
  explicit QuaternionT(T scalar) : c{std::move(scalar), T(0.0), T(0.0), T(0.0)} {}

  static QuaternionT vector(T q1, T q2, T q3) { return {T(0.0), std::move(q1), std::move(q2), std::move(q3)}; }
  /// Basis unit e_n: e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
  static QuaternionT unit(int n) {
    QuaternionT q;
    q.c[static_cast<std::size_t>(n)] = T(1.0);
    return q;
  }

  const T& scalar() const { return c[0]; }
  QuaternionT vector_part() const { return {T(0.0), c[1], c[2], c[3]}; }

  friend QuaternionT operator+(const QuaternionT& a, const QuaternionT& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
  }
  friend QuaternionT operator-(const QuaternionT& a, const QuaternionT& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
  }
  friend QuaternionT operator-(const QuaternionT& a) { return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }
  friend QuaternionT operator*(const QuaternionT& a, const T& s) {
    return {a.c[0] * s, a.c[1] * s, a.c[2] * s, a.c[3] * s};
  }
  friend QuaternionT operator*(const T& s, const QuaternionT& a) { return a * s; }

  /// Hamilton product: a0 b0 - <a, b> + a0 b + b0 a + [a, b].
  friend QuaternionT operator*(const QuaternionT& a, const QuaternionT& b) {
    const auto& x = a.c;
    const auto& y = b.c;
    return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
            x[0] * y[2] + x[2] * y[0] + x[3] * y[1] - x[1] * y[3],
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
  }
};

using ComplexQuaternion = QuaternionT<cplx>;

template <class T>
QuaternionT<T> qmul(const QuaternionT<T>& a, const QuaternionT<T>& b) {
  return a * b;
}

/// Q0 - vector part.
template <class T>
QuaternionT<T> conj_H(const QuaternionT<T>& q) {
  return {q.c[0], -q.c[1], -q.c[2], -q.c[3]};
}

ComplexQuaternion value_of(const QuaternionT<Jet>& q);
/// Largest component modulus.
double magnitude(const ComplexQuaternion& q);
std::ostream& operator<<(std::ostream& os, const ComplexQuaternion& q);

class QuaternionField3D {
 public:
  QuaternionField3D() = default;
  explicit QuaternionField3D(std::array<ScalarField3, 4> comps) : comps_(std::move(comps)) {}
  /// Scalar field g viewed as g + 0 i + 0 j + 0 k.
  explicit QuaternionField3D(ScalarField3 scalar);
  static QuaternionField3D vector(ScalarField3 q1, ScalarField3 q2, ScalarField3 q3);

  const ScalarField3& operator[](int n) const { return comps_[static_cast<std::size_t>(n)]; }

  ComplexQuaternion operator()(const Point3& p) const;
  QuaternionT<Jet> jet(const Point3& p, int order) const;

 private:
  std::array<ScalarField3, 4> comps_{};
};

/// D Q = sum_n e_n dQ/dx_n = -div Q + grad Q0 + rot Q. Result order drops by one.
QuaternionT<Jet> dirac_D(const QuaternionT<Jet>& q);
ComplexQuaternion dirac_D(const QuaternionField3D& q, const Point3& p);
/// D as a field (each evaluation differentiates one order deeper).
QuaternionField3D dirac_D(const QuaternionField3D& q);

/// rot of the vector part.
std::array<cplx, 3> rot(const QuaternionField3D& q, const Point3& p);

struct Antigradient3DOptions {
  cplx c{};
  double compat_tol = 1e-7;  // |rot G| relative to max(1, |dG|)
  bool check = true;
  QuadratureOptions quad{};
};

/// int_{x0}^{x} G1(s, y0, z0) ds + int_{y0}^{y} G2(x, s, z0) ds
/// + int_{z0}^{z} G3(x, y, s) ds + c. Throws CompatibilityError when rot G != 0
/// on the integration path.
cplx antigradient_3d(const QuaternionField3D& G, const Point3& base, const Point3& target,
                     const Antigradient3DOptions& opt = {});
/// As a field; jets follow from the jets of G.
ScalarField3 antigradient_3d_field(const QuaternionField3D& G, const Point3& base,
                                   const Antigradient3DOptions& opt = {});

/// Throws ResidualCheckError unless f is nonvanishing and (-Laplacian + nu) f
/// vanishes at the given points (relative tolerance).
void check_schrodinger_solution(const ScalarField3& f, const ScalarField3& nu,
                                std::span<const Point3> points, double tol = 1e-6);

/// (D + M^{Df/f})(D - M^{Df/f}) g - (-Laplacian + nu) g with M^P Q = Q P.
ComplexQuaternion factorization_residual_3d(const ScalarField3& g, const ScalarField3& f,
                                            const ScalarField3& nu, const Point3& p);

/// (D + M^{Df/f}) F.
ComplexQuaternion dirac_residual(const QuaternionField3D& F, const ScalarField3& f, const Point3& p);

/// F = f D(f^{-1} g). When `check_points` is nonempty, g is first checked to
/// solve (-Laplacian + nu) g = 0 there, and F to solve (D + M^{Df/f}) F = 0.
QuaternionField3D schr_to_dirac(const ScalarField3& g, const ScalarField3& f,
                                const ScalarField3& nu = ScalarField3::constant(0.0),
                                std::span<const Point3> check_points = {}, double tol = 1e-8);

/// g = f A[f^{-1} F], determined up to c f.
ScalarField3 dirac_to_schr(const QuaternionField3D& F, const ScalarField3& f, const Point3& base,
                           const Antigradient3DOptions& opt = {});

/// (div p grad + q) phi + p^{1/2} (D + M^{Df/f})(D - M^{Df/f}) (p^{1/2} phi),
/// f = p^{1/2} u0.
ComplexQuaternion divpgradq_residual_3d(const ScalarField3& phi, const ScalarField3& p,
                                        const ScalarField3& q, const ScalarField3& u0,
                                        const Point3& pt);

struct Vekua3DResidual {
  ComplexQuaternion equation;      // D W - (Df/f) conj_H(W)
  cplx divergence;                 // div(f W)
  std::array<cplx, 3> rotational;  // f^{-1} rot(f W) + f grad(f^{-1} W0)
};

Vekua3DResidual vekua3d_residual(const QuaternionField3D& W, const ScalarField3& f, const Point3& p);

/// With phi0 = W0 / f, phi_n = f W_n and w = phi0 + phi1 i + phi2 j + phi3 k:
/// D w - ((1 - f^2) / (1 + f^2)) D(conj_H w).
ComplexQuaternion second_kind_residual_3d(const QuaternionField3D& W, const ScalarField3& f,
                                          const Point3& p);

/// q := -div(p grad u0) / u0.
ScalarField3 manufactured_q_3d(const ScalarField3& p, const ScalarField3& u0);

/// div(a grad u) at a point.
cplx div_a_grad_3d(const ScalarField3& a, const ScalarField3& u, const Point3& p);
/// rot(a rot v) for the vector part of v.
std::array<cplx, 3> rot_a_rot(const ScalarField3& a, const QuaternionField3D& v, const Point3& p);

}  // namespace vekua
