#pragma once

// d/dz = (d/dx - k d/dy) / 2, d/dzbar = (d/dx + k d/dy) / 2, the two-leg
// antiderivatives A and Abar, and straight-segment line integrals.

#include "vekua/bicomplex.hpp"
#include "vekua/field.hpp"
#include "vekua/quadrature.hpp"

namespace vekua {

/// Jet-level operators; the result has one order less than the input.
BicomplexT<Jet> d_z(const BicomplexT<Jet>& w);
BicomplexT<Jet> d_zbar(const BicomplexT<Jet>& w);

Bicomplex d_z(const BicomplexField& w, const Point2& p);
Bicomplex d_zbar(const BicomplexField& w, const Point2& p);

BicomplexField d_z(const BicomplexField& w);
BicomplexField d_zbar(const BicomplexField& w);

struct Segment {
  Point2 start{};
  Point2 end{};
  QuadratureOptions quad{};
};

/// Integral of W dz along the segment, dz = dx + k dy.
Bicomplex line_integral(const BicomplexField& w, const Segment& seg);

enum class Antiderivative {
  A,     // d/dz of the result is Phi; needs dPhi1/dy + dPhi2/dx = 0
  Abar,  // d/dzbar of the result is Phi; needs dPhi1/dy - dPhi2/dx = 0
};

struct AntiderivativeOptions {
  cplx c{};                 // additive constant
  double compat_tol = 1e-7; // scaled by max(1, |dPhi1/dy|, |dPhi2/dx|)
  bool check = true;
  QuadratureOptions quad{};
};

/// 2 (int_{x0}^{x} Phi1(eta, y) d eta -+ int_{y0}^{y} Phi2(x0, xi) d xi) + c
/// with '-' for A and '+' for Abar. Throws CompatibilityError.
cplx antiderivative(Antiderivative kind, const BicomplexField& phi, const Point2& base,
                    const Point2& target, const AntiderivativeOptions& opt = {});

inline cplx antiderivative_A(const BicomplexField& phi, const Point2& base, const Point2& target,
                             const AntiderivativeOptions& opt = {}) {
  return antiderivative(Antiderivative::A, phi, base, target, opt);
}
inline cplx antiderivative_Abar(const BicomplexField& phi, const Point2& base,
                                const Point2& target, const AntiderivativeOptions& opt = {}) {
  return antiderivative(Antiderivative::Abar, phi, base, target, opt);
}

/// The antiderivative as a field. Its jets come from the jets of Phi, so
/// derivatives of any order are exact up to the quadrature of the value.
ScalarField2 antiderivative_field(Antiderivative kind, const BicomplexField& phi,
                                  const Point2& base, const AntiderivativeOptions& opt = {});

}  // namespace vekua
