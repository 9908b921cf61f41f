#pragma once

// Scalar and bicomplex fields on R^2 / R^3.
//
// A field is an immutable, type-erased map from a point to a complex value
// that can also produce its local Taylor jet of any order up to
// kMaxJetOrder. Fields compose through `eval`, which accepts either plain
// coordinates (cplx) or coordinate jets (Jet); with jets the chain rule is
// applied, so derivatives of composed fields stay exact.

#include <array>
#include <memory>
#include <type_traits>
#include <utility>

#include "vekua/bicomplex.hpp"
#include "vekua/expr.hpp"
#include "vekua/jet.hpp"

namespace vekua {

template <int D>
using Point = std::array<double, D>;
using Point2 = Point<2>;
using Point3 = Point<3>;

/// Coordinate jets (x_0, ..., x_{D-1}) of the given order centred at p.
template <int D>
std::array<Jet, D> coordinate_jets(const Point<D>& p, int order) {
  std::array<Jet, D> out;
  for (int v = 0; v < D; ++v) out[v] = Jet::variable(D, order, v, p[v]);
  return out;
}

template <int D>
std::array<cplx, D> to_complex(const Point<D>& p) {
  std::array<cplx, D> out;
  for (int v = 0; v < D; ++v) out[v] = p[v];
  return out;
}

template <class T, int D>
Point<D> real_point(const std::array<T, D>& p) {
  Point<D> out;
  for (int v = 0; v < D; ++v) out[v] = value_of(p[v]).real();
  return out;
}

template <class T, std::size_t D>
int max_order(const std::array<T, D>& p) {
  int k = 0;
  if constexpr (std::is_same_v<T, Jet>) {
    for (const auto& j : p) k = std::max(k, j.is_constant() ? 0 : j.order());
  }
  return k;
}

// Elementary functions usable on both value types inside generic field code.
namespace elem {
inline cplx exp(cplx v) { return std::exp(v); }
inline cplx sqrt(cplx v) { return std::sqrt(v); }
inline cplx log(cplx v) { return checked_log(v); }
inline cplx sin(cplx v) { return std::sin(v); }
inline cplx cos(cplx v) { return std::cos(v); }
inline cplx sinh(cplx v) { return std::sinh(v); }
inline cplx cosh(cplx v) { return std::cosh(v); }
inline cplx reciprocal(cplx v) { return vekua::reciprocal(v); }
inline cplx ipow(cplx v, int n) { return vekua::ipow(v, n); }
inline Jet exp(const Jet& v) { return vekua::exp(v); }
inline Jet sqrt(const Jet& v) { return vekua::sqrt(v); }
inline Jet log(const Jet& v) { return vekua::log(v); }
inline Jet sin(const Jet& v) { return vekua::sin(v); }
inline Jet cos(const Jet& v) { return vekua::cos(v); }
inline Jet sinh(const Jet& v) { return vekua::sinh(v); }
inline Jet cosh(const Jet& v) { return vekua::cosh(v); }
inline Jet reciprocal(const Jet& v) { return vekua::reciprocal(v); }
inline Jet ipow(const Jet& v, int n) { return vekua::ipow(v, n); }
}  // namespace elem

template <int D>
class ScalarField {
 public:
  using Pt = Point<D>;

  struct Impl {
    virtual ~Impl() = default;
    virtual cplx value(const Pt& p) const = 0;
    /// Jet in the D coordinate variables centred at p.
    virtual Jet jet(const Pt& p, int order) const = 0;
  };

  ScalarField() : ScalarField(constant(0.0)) {}
  explicit ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static ScalarField constant(cplx c);
  static ScalarField coordinate(int var);
  /// Binds parameters; coordinates x, y (and z3 when D == 3) are the variables.
  static ScalarField from_expr(const Expr& e, const Bindings& bindings = {});
  /// `fn` must be callable as fn(const std::array<T, D>&) -> T for T in {cplx, Jet}.
  template <class Fn>
  static ScalarField generic(Fn fn);

  cplx operator()(const Pt& p) const { return impl_->value(p); }
  Jet jet(const Pt& p, int order) const { return impl_->jet(p, order); }

  template <class T>
  T eval(const std::array<T, D>& p) const {
    if constexpr (std::is_same_v<T, cplx>) {
      return impl_->value(real_point<cplx, D>(p));
    } else {
      const Pt at = real_point<Jet, D>(p);
      const int k = max_order(p);
      if (k == 0) return Jet(impl_->value(at));
      return compose(impl_->jet(at, k), std::span<const Jet>(p.data(), D));
    }
  }

  Jet2 jet2(const Pt& p) const requires(D == 2) { return Jet2::from(jet(p, 2)); }
  Jet3 jet3(const Pt& p) const requires(D == 3) { return Jet3::from(jet(p, 2)); }

 private:
  std::shared_ptr<const Impl> impl_;
};

using ScalarField2 = ScalarField<2>;
using ScalarField3 = ScalarField<3>;

namespace detail {

template <int D, class Fn>
struct GenericScalar final : ScalarField<D>::Impl {
  explicit GenericScalar(Fn f) : fn(std::move(f)) {}
  cplx value(const Point<D>& p) const override { return fn(to_complex<D>(p)); }
  Jet jet(const Point<D>& p, int order) const override { return Jet(fn(coordinate_jets<D>(p, order))); }
  Fn fn;
};

template <int D>
struct ExprScalar final : ScalarField<D>::Impl {
  explicit ExprScalar(Expr e) : expr(std::move(e)) {}
  template <class T>
  VarValues<T> bind(const std::array<T, D>& p) const {
    VarValues<T> v;
    v.set(Var::X, p[0]).set(Var::Y, p[1]);
    if constexpr (D == 3) v.set(Var::Z3, p[2]);
    return v;
  }
  cplx value(const Point<D>& p) const override { return expr.evaluate(bind(to_complex<D>(p))); }
  Jet jet(const Point<D>& p, int order) const override {
    return expr.evaluate(bind(coordinate_jets<D>(p, order)));
  }
  Expr expr;
};

template <int D>
struct PartialScalar final : ScalarField<D>::Impl {
  PartialScalar(ScalarField<D> f, int v) : field(std::move(f)), var(v) {}
  cplx value(const Point<D>& p) const override { return field.jet(p, 1).partial(var); }
  Jet jet(const Point<D>& p, int order) const override {
    return field.jet(p, order + 1).derivative(var);
  }
  ScalarField<D> field;
  int var;
};

}  // namespace detail

template <int D>
template <class Fn>
ScalarField<D> ScalarField<D>::generic(Fn fn) {
  return ScalarField(std::make_shared<detail::GenericScalar<D, Fn>>(std::move(fn)));
}

template <int D>
ScalarField<D> ScalarField<D>::constant(cplx c) {
  return generic([c](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    return T(c);
  });
}

template <int D>
ScalarField<D> ScalarField<D>::coordinate(int var) {
  return generic([var](const auto& p) { return p[var]; });
}

template <int D>
ScalarField<D> ScalarField<D>::from_expr(const Expr& e, const Bindings& bindings) {
  Expr bound = e.bind(bindings);
  for (Var v : bound.variables()) {
    const bool ok = v == Var::X || v == Var::Y || (D == 3 && v == Var::Z3);
    if (!ok) throw Error("expression uses variable '" + to_string(v) + "' which is not a coordinate here");
  }
  return ScalarField(std::make_shared<detail::ExprScalar<D>>(std::move(bound)));
}

template <int D>
ScalarField<D> partial(const ScalarField<D>& f, int var) {
  return ScalarField<D>(std::make_shared<detail::PartialScalar<D>>(f, var));
}

template <int D>
ScalarField<D> operator+(const ScalarField<D>& a, const ScalarField<D>& b) {
  return ScalarField<D>::generic([a, b](const auto& p) { return a.eval(p) + b.eval(p); });
}
template <int D>
ScalarField<D> operator-(const ScalarField<D>& a, const ScalarField<D>& b) {
  return ScalarField<D>::generic([a, b](const auto& p) { return a.eval(p) - b.eval(p); });
}
template <int D>
ScalarField<D> operator*(const ScalarField<D>& a, const ScalarField<D>& b) {
  return ScalarField<D>::generic([a, b](const auto& p) { return a.eval(p) * b.eval(p); });
}
template <int D>
ScalarField<D> operator/(const ScalarField<D>& a, const ScalarField<D>& b) {
  return ScalarField<D>::generic([a, b](const auto& p) { return checked_div(a.eval(p), b.eval(p)); });
}
template <int D>
ScalarField<D> operator*(cplx s, const ScalarField<D>& a) {
  return ScalarField<D>::generic([a, s](const auto& p) { return a.eval(p) * s; });
}
template <int D>
ScalarField<D> operator-(const ScalarField<D>& a) {
  return ScalarField<D>::generic([a](const auto& p) { return -a.eval(p); });
}

template <int D>
ScalarField<D> sqrt(const ScalarField<D>& a) {
  return ScalarField<D>::generic([a](const auto& p) { return elem::sqrt(a.eval(p)); });
}
template <int D>
ScalarField<D> exp(const ScalarField<D>& a) {
  return ScalarField<D>::generic([a](const auto& p) { return elem::exp(a.eval(p)); });
}
template <int D>
ScalarField<D> log(const ScalarField<D>& a) {
  return ScalarField<D>::generic([a](const auto& p) { return elem::log(a.eval(p)); });
}
template <int D>
ScalarField<D> reciprocal(const ScalarField<D>& a) {
  return ScalarField<D>::generic([a](const auto& p) { return elem::reciprocal(a.eval(p)); });
}
template <int D>
ScalarField<D> ipow(const ScalarField<D>& a, int n) {
  return ScalarField<D>::generic([a, n](const auto& p) { return elem::ipow(a.eval(p), n); });
}

/// Laplacian as a field (needs jets two orders higher than requested).
template <int D>
ScalarField<D> laplacian(const ScalarField<D>& f) {
  ScalarField<D> sum = partial(partial(f, 0), 0);
  for (int v = 1; v < D; ++v) sum = sum + partial(partial(f, v), v);
  return sum;
}

// ---------------------------------------------------------------------------

/// W = W1 + W2 k with complex-valued W1, W2 on R^2.
class BicomplexField {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual Bicomplex value(const Point2& p) const = 0;
    virtual BicomplexT<Jet> jet(const Point2& p, int order) const = 0;
  };

  BicomplexField() : BicomplexField(ScalarField2::constant(0.0), ScalarField2::constant(0.0)) {}
  explicit BicomplexField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  BicomplexField(ScalarField2 sc, ScalarField2 vec);
  explicit BicomplexField(ScalarField2 sc) : BicomplexField(std::move(sc), ScalarField2::constant(0.0)) {}

  static BicomplexField constant(Bicomplex c);
  /// z = x + k y.
  static BicomplexField z();
  /// `fn` must be callable as fn(const std::array<T, 2>&) -> BicomplexT<T>.
  template <class Fn>
  static BicomplexField generic(Fn fn);

  Bicomplex operator()(const Point2& p) const { return impl_->value(p); }
  BicomplexT<Jet> jet(const Point2& p, int order) const { return impl_->jet(p, order); }

  template <class T>
  BicomplexT<T> eval(const std::array<T, 2>& p) const {
    if constexpr (std::is_same_v<T, cplx>) {
      return impl_->value(real_point<cplx, 2>(p));
    } else {
      const Point2 at = real_point<Jet, 2>(p);
      const int k = max_order(p);
      if (k == 0) {
        const Bicomplex v = impl_->value(at);
        return {Jet(v.sc), Jet(v.vec)};
      }
      const BicomplexT<Jet> local = impl_->jet(at, k);
      const std::span<const Jet> in(p.data(), 2);
      return {compose(local.sc, in), compose(local.vec, in)};
    }
  }

  ScalarField2 sc() const;
  ScalarField2 vec() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

namespace detail {

template <class Fn>
struct GenericBicomplex final : BicomplexField::Impl {
  explicit GenericBicomplex(Fn f) : fn(std::move(f)) {}
  Bicomplex value(const Point2& p) const override { return fn(to_complex<2>(p)); }
  BicomplexT<Jet> jet(const Point2& p, int order) const override {
    return fn(coordinate_jets<2>(p, order));
  }
  Fn fn;
};

}  // namespace detail

template <class Fn>
BicomplexField BicomplexField::generic(Fn fn) {
  return BicomplexField(std::make_shared<detail::GenericBicomplex<Fn>>(std::move(fn)));
}

BicomplexField operator+(const BicomplexField& a, const BicomplexField& b);
BicomplexField operator-(const BicomplexField& a, const BicomplexField& b);
BicomplexField operator*(const BicomplexField& a, const BicomplexField& b);
BicomplexField operator*(const ScalarField2& s, const BicomplexField& a);
BicomplexField operator*(Bicomplex c, const BicomplexField& a);
BicomplexField conj(const BicomplexField& a);
BicomplexField times_k(const BicomplexField& a);
/// a^n for n >= 0.
BicomplexField ipow(const BicomplexField& a, int n);

}  // namespace vekua
