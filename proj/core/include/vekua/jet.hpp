#pragma once

// Truncated multivariate Taylor series ("jets") with complex coefficients.
//
// A Jet of dimension d and order K stores the Taylor coefficients c_alpha of
//   f(p + delta) = sum_{|alpha| <= K} c_alpha delta^alpha
// in graded order (degree 0, then degree 1, ...). Arithmetic truncates at the
// smaller order of its operands, so every derivative up to order K is exact
// forward-mode AD. A jet of dimension 0 is an exact constant and combines with
// jets of any shape.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vekua {

using cplx = std::complex<double>;

inline constexpr int kMaxJetOrder = 8;

class Jet {
 public:
  Jet() = default;
  explicit Jet(cplx constant) : c_{constant} {}
  Jet(double constant) : c_{cplx(constant)} {}  // NOLINT: implicit on purpose
  Jet(int dim, int order, cplx value = {});

  /// The coordinate `var` of a `dim`-dimensional point, centred at `at`.
  static Jet variable(int dim, int order, int var, cplx at);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  bool is_constant() const noexcept { return dim_ == 0; }
  std::size_t size() const noexcept { return c_.size(); }

  cplx value() const noexcept { return c_[0]; }
  cplx coeff(std::size_t graded_index) const { return c_[graded_index]; }
  cplx& coeff(std::size_t graded_index) { return c_[graded_index]; }
  /// Taylor coefficient of delta^exps.
  cplx coeff(std::span<const int> exps) const;

  cplx partial(int var) const;
  cplx partial(int var_a, int var_b) const;
  /// d/d(var); the result has order - 1.
  Jet derivative(int var) const;
  Jet truncated(int order) const;
  /// g(delta) = f(s * delta): the jet seen through a scaling of the displacement.
  Jet scaled(double s) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator*=(cplx s);
  Jet& operator+=(cplx s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(Jet a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
  friend Jet operator*(double s, Jet a) { return a *= cplx(s); }
  friend Jet operator+(Jet a, cplx s) { return a += s; }
  friend Jet operator+(cplx s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, cplx s) { return a += -s; }
  friend Jet operator-(cplx s, Jet a) { return (-a) += s; }

 private:
  friend Jet compose_series(const Jet& u, std::span<const cplx> taylor);
  friend Jet from_gradient(cplx value, std::span<const Jet> gradient);
  friend Jet compose(const Jet& local, std::span<const Jet> inputs);

  int dim_ = 0;
  int order_ = 0;
  std::vector<cplx> c_{cplx{}};
};

/// Number of monomials of total degree <= order in `dim` variables.
std::size_t jet_size(int dim, int order);

/// sum_k taylor[k] (u - u(0))^k, truncated at the order of u.
Jet compose_series(const Jet& u, std::span<const cplx> taylor);

/// Jet of order K whose gradient is `gradient` (each of order K - 1) and whose
/// value is `value`. The gradient must be exact (curl-free) for the result to
/// be meaningful; only one path through the monomials is used.
Jet from_gradient(cplx value, std::span<const Jet> gradient);

/// Chain rule for jets: `local` is the jet of some g in D variables at the
/// point (inputs[0].value(), ..., inputs[D-1].value()); the result is the jet
/// of g(inputs) in the variables of the inputs.
Jet compose(const Jet& local, std::span<const Jet> inputs);

// Elementary functions. Each throws DomainError outside its domain.
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sqrt(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet reciprocal(const Jet& u);
Jet ipow(const Jet& u, int n);
Jet atan2(const Jet& y, const Jet& x);

// Complex counterparts with the same domain checks, so templated code can use
// either value type.
cplx reciprocal(cplx u);
cplx ipow(cplx u, int n);
cplx atan2(cplx y, cplx x);
cplx checked_log(cplx u);
cplx checked_div(cplx a, cplx b);
Jet checked_log(const Jet& u);
Jet checked_div(const Jet& a, const Jet& b);

inline cplx value_of(cplx v) { return v; }
inline cplx value_of(const Jet& v) { return v.value(); }

/// Value, first and second partials of a function of (x, y).
struct Jet2 {
  cplx value, dx, dy, dxx, dxy, dyy;

  static Jet2 from(const Jet& j);
  cplx laplacian() const { return dxx + dyy; }
};

/// Value, gradient and Hessian (xx, xy, xz, yy, yz, zz) of a function of
/// (x, y, z3).
struct Jet3 {
  cplx value;
  std::array<cplx, 3> grad;
  std::array<cplx, 6> hess;

  static Jet3 from(const Jet& j);
  cplx laplacian() const { return hess[0] + hess[3] + hess[5]; }
};

}  // namespace vekua
