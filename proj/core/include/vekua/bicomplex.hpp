#pragma once

// Bicomplex numbers q = Q1 + Q2 k with complex Q1, Q2, where k^2 = -1 and k
// commutes with the imaginary unit i. The component type T is either cplx or
// Jet, so the same formulas serve plain values and derivative propagation.

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <type_traits>
#include <utility>

#include "vekua/error.hpp"
#include "vekua/jet.hpp"

namespace vekua {

inline constexpr double kZeroDivisorTol = 1e-14;

template <class T>
struct BicomplexT {
  T sc{};
  T vec{};

  BicomplexT() = default;
  BicomplexT(T scalar) : sc(std::move(scalar)), vec(T(0.0)) {}  // NOLINT: scalars embed
  BicomplexT(T scalar, T vector) : sc(std::move(scalar)), vec(std::move(vector)) {}

  static BicomplexT k() { return {T(0.0), T(1.0)}; }

  BicomplexT& operator+=(const BicomplexT& o) {
    sc += o.sc;
    vec += o.vec;
    return *this;
  }
  BicomplexT& operator-=(const BicomplexT& o) {
    sc -= o.sc;
    vec -= o.vec;
    return *this;
  }

  friend BicomplexT operator+(BicomplexT a, const BicomplexT& b) { return a += b; }
  friend BicomplexT operator-(BicomplexT a, const BicomplexT& b) { return a -= b; }
  friend BicomplexT operator-(const BicomplexT& a) { return {-a.sc, -a.vec}; }
  friend BicomplexT operator*(const BicomplexT& a, const BicomplexT& b) {
    return {a.sc * b.sc - a.vec * b.vec, a.sc * b.vec + a.vec * b.sc};
  }
  BicomplexT& operator*=(const BicomplexT& o) { return *this = *this * o; }

  // Multiplication by a scalar (complex, i.e. k-free) factor.
  friend BicomplexT operator*(const BicomplexT& a, const T& s) { return {a.sc * s, a.vec * s}; }
  friend BicomplexT operator*(const T& s, const BicomplexT& a) { return {s * a.sc, s * a.vec}; }
};

using Bicomplex = BicomplexT<cplx>;

template <class T>
BicomplexT<T> conj(const BicomplexT<T>& q) {
  return {q.sc, -q.vec};
}

/// k * q, i.e. (-Q2) + Q1 k.
template <class T>
BicomplexT<T> times_k(const BicomplexT<T>& q) {
  return {-q.vec, q.sc};
}

/// q * conj(q) = Q1^2 + Q2^2, a scalar.
template <class T>
T norm_scalar(const BicomplexT<T>& q) {
  return q.sc * q.sc + q.vec * q.vec;
}

inline bool is_zero_divisor(const Bicomplex& q, double tol = kZeroDivisorTol) {
  const double scale = std::norm(q.sc) + std::norm(q.vec);
  if (scale == 0.0) return false;
  return std::abs(q.sc * q.sc + q.vec * q.vec) <= tol * scale;
}

/// conj(q) / (Q1^2 + Q2^2). Throws ZeroDivisorError for zero and zero divisors.
template <class T>
BicomplexT<T> inverse(const BicomplexT<T>& q, double tol = kZeroDivisorTol) {
  const Bicomplex v{value_of(q.sc), value_of(q.vec)};
  if ((v.sc == cplx{} && v.vec == cplx{}) || is_zero_divisor(v, tol)) {
    throw ZeroDivisorError("bicomplex number is zero or a zero divisor");
  }
  const T n = norm_scalar(q);
  if constexpr (std::is_same_v<T, cplx>) {
    return conj(q) * (1.0 / n);
  } else {
    return conj(q) * reciprocal(n);
  }
}

template <class T>
BicomplexT<T> operator/(const BicomplexT<T>& a, const BicomplexT<T>& b) {
  return a * inverse(b);
}

inline Bicomplex mul(const Bicomplex& a, const Bicomplex& b) { return a * b; }

inline Bicomplex value_of(const BicomplexT<Jet>& q) { return {q.sc.value(), q.vec.value()}; }
inline const Bicomplex& value_of(const Bicomplex& q) { return q; }

/// Largest component magnitude; used for tolerances.
inline double magnitude(const Bicomplex& q) { return std::max(std::abs(q.sc), std::abs(q.vec)); }
inline double magnitude(cplx v) { return std::abs(v); }

std::ostream& operator<<(std::ostream& os, const Bicomplex& q);

}  // namespace vekua
