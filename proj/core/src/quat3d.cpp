#include "vekua/quat3d.hpp"

#include <cstdio>
#include <ostream>

#include "vekua/error.hpp"

namespace vekua {

namespace {

using QJ = QuaternionT<Jet>;

std::string at_string(const Point3& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", p[0], p[1], p[2]);
  return buf;
}

std::array<Jet, 3> rot_jets(const std::array<Jet, 3>& v) {
  return {v[2].derivative(1) - v[1].derivative(2), v[0].derivative(2) - v[2].derivative(0),
          v[1].derivative(0) - v[0].derivative(1)};
}

Jet truncate(const Jet& j, int order) { return j.truncated(order); }

QJ truncate(const QJ& q, int order) {
  return {q.c[0].truncated(order), q.c[1].truncated(order), q.c[2].truncated(order), q.c[3].truncated(order)};
}

QJ scalar_q(const Jet& s) { return QJ(s); }

/// Df / f = grad f / f from a jet of f; order drops by one.
QJ log_gradient(const Jet& f) {
  const Jet inv = reciprocal(truncate(f, f.order() - 1));
  return QJ::vector(f.derivative(0) * inv, f.derivative(1) * inv, f.derivative(2) * inv);
}

void require_nonzero(const ScalarField3& f, const Point3& p, const char* name) {
  if (!(std::abs(f(p)) > 0.0)) throw Error(std::string(name) + " vanishes at " + at_string(p));
}

/// One component of D Q as a scalar field.
struct DiracComponent final : ScalarField3::Impl {
  DiracComponent(QuaternionField3D f, int n) : q(std::move(f)), comp(n) {}
  cplx value(const Point3& p) const override { return dirac_D(q.jet(p, 1)).c[comp].value(); }
  Jet jet(const Point3& p, int order) const override {
    return dirac_D(q.jet(p, order + 1)).c[comp];
  }
  QuaternionField3D q;
  std::size_t comp;
};

struct AntigradientImpl final : ScalarField3::Impl {
  AntigradientImpl(QuaternionField3D g, Point3 b, Antigradient3DOptions o)
      : G(std::move(g)), base(b), opt(o) {}
  cplx value(const Point3& p) const override { return antigradient_3d(G, base, p, opt); }
  Jet jet(const Point3& p, int order) const override {
    const cplx v = value(p);
    if (order == 0) return Jet(3, 0, v);
    const QJ j = G.jet(p, order - 1);
    const std::array<Jet, 3> grad{j.c[1], j.c[2], j.c[3]};
    return from_gradient(v, grad);
  }
  QuaternionField3D G;
  Point3 base;
  Antigradient3DOptions opt;
};

}  // namespace

ComplexQuaternion value_of(const QuaternionT<Jet>& q) {
  return {q.c[0].value(), q.c[1].value(), q.c[2].value(), q.c[3].value()};
}

double magnitude(const ComplexQuaternion& q) {
  double m = 0.0;
  for (const cplx& v : q.c) m = std::max(m, std::abs(v));
  return m;
}

std::ostream& operator<<(std::ostream& os, const ComplexQuaternion& q) {
  return os << '(' << q.c[0] << ", " << q.c[1] << ", " << q.c[2] << ", " << q.c[3] << ')';
}

QuaternionField3D::QuaternionField3D(ScalarField3 scalar)
    : comps_{std::move(scalar), ScalarField3::constant(0.0), ScalarField3::constant(0.0),
             ScalarField3::constant(0.0)} {}

QuaternionField3D QuaternionField3D::vector(ScalarField3 q1, ScalarField3 q2, ScalarField3 q3) {
  return QuaternionField3D({ScalarField3::constant(0.0), std::move(q1), std::move(q2), std::move(q3)});
}

ComplexQuaternion QuaternionField3D::operator()(const Point3& p) const {
  return {comps_[0](p), comps_[1](p), comps_[2](p), comps_[3](p)};
}

QuaternionT<Jet> QuaternionField3D::jet(const Point3& p, int order) const {
  QJ out;
  for (std::size_t n = 0; n < 4; ++n) {
    out.c[n] = comps_[n].jet(p, order);
    // Constant components come back dimensionless; give them the full shape.
    if (out.c[n].is_constant()) out.c[n] = Jet(3, order, out.c[n].value());
  }
  return out;
}

QuaternionT<Jet> dirac_D(const QuaternionT<Jet>& q) {
  QJ out;
  bool first = true;
  for (int n = 0; n < 3; ++n) {
    QJ d{q.c[0].derivative(n), q.c[1].derivative(n), q.c[2].derivative(n), q.c[3].derivative(n)};
    QJ term = QJ::unit(n + 1) * d;
    out = first ? term : out + term;
    first = false;
  }
  return out;
}

ComplexQuaternion dirac_D(const QuaternionField3D& q, const Point3& p) {
  return value_of(dirac_D(q.jet(p, 1)));
}

QuaternionField3D dirac_D(const QuaternionField3D& q) {
  std::array<ScalarField3, 4> c;
  for (int n = 0; n < 4; ++n) c[static_cast<std::size_t>(n)] = ScalarField3(std::make_shared<DiracComponent>(q, n));
  return QuaternionField3D(std::move(c));
}

std::array<cplx, 3> rot(const QuaternionField3D& q, const Point3& p) {
  const QJ j = q.jet(p, 1);
  const auto r = rot_jets({j.c[1], j.c[2], j.c[3]});
  return {r[0].value(), r[1].value(), r[2].value()};
}

cplx antigradient_3d(const QuaternionField3D& G, const Point3& base, const Point3& target,
                     const Antigradient3DOptions& opt) {
  const double h[3] = {target[0] - base[0], target[1] - base[1], target[2] - base[2]};
  auto leg_point = [&](int leg, double t) -> Point3 {
    switch (leg) {
      case 0: return {base[0] + t * h[0], base[1], base[2]};
      case 1: return {target[0], base[1] + t * h[1], base[2]};
      default: return {target[0], target[1], base[2] + t * h[2]};
    }
  };
  if (opt.check) {
    const GaussRule& rule = gauss_legendre(opt.quad.nodes);
    for (int leg = 0; leg < 3; ++leg) {
      if (h[leg] == 0.0) continue;
      for (int i = 0; i < rule.n; ++i) {
        const Point3 p = leg_point(leg, rule.nodes[static_cast<std::size_t>(i)]);
        const QJ j = G.jet(p, 1);
        double scale = 1.0;
        for (int a = 1; a < 4; ++a) {
          for (int b = 0; b < 3; ++b) scale = std::max(scale, std::abs(j.c[a].partial(b)));
        }
        const auto r = rot_jets({j.c[1], j.c[2], j.c[3]});
        const double res = std::max({std::abs(r[0].value()), std::abs(r[1].value()), std::abs(r[2].value())});
        if (res > opt.compat_tol * scale) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "field is not a gradient: |rot| = %.3g at %s", res,
                        at_string(p).c_str());
          throw CompatibilityError(buf);
        }
      }
    }
  }
  cplx total = opt.c;
  for (int leg = 0; leg < 3; ++leg) {
    if (h[leg] == 0.0) continue;
    total += integrate_adaptive<cplx>(
        [&](double t) { return G[leg + 1](leg_point(leg, t)) * h[leg]; }, opt.quad);
  }
  return total;
}

ScalarField3 antigradient_3d_field(const QuaternionField3D& G, const Point3& base,
                                   const Antigradient3DOptions& opt) {
  return ScalarField3(std::make_shared<AntigradientImpl>(G, base, opt));
}

void check_schrodinger_solution(const ScalarField3& f, const ScalarField3& nu,
                                std::span<const Point3> points, double tol) {
  for (const Point3& p : points) {
    const Jet3 j = f.jet3(p);
    if (!(std::abs(j.value) > 1e-300)) throw Error("f vanishes at " + at_string(p));
    const cplx nv = nu(p) * j.value;
    const double res = std::abs(-j.laplacian() + nv);
    if (res > tol * (1.0 + std::abs(j.laplacian()) + std::abs(nv))) {
      throw ResidualCheckError("function does not solve (-Laplacian + nu) u = 0 at " + at_string(p) +
                               " (residual " + std::to_string(res) + ")");
    }
  }
}

namespace {

/// (D + M^b)(D - M^b) G on jets; G of order >= 2, b = Df/f of order >= 1.
QJ factor_pair(const QJ& G, const QJ& b) {
  const QJ inner = dirac_D(G) - truncate(G, 1) * b;
  return dirac_D(inner) + inner * b;
}

}  // namespace

ComplexQuaternion factorization_residual_3d(const ScalarField3& g, const ScalarField3& f,
                                            const ScalarField3& nu, const Point3& p) {
  require_nonzero(f, p, "f");
  const Jet fj = f.jet(p, 2);
  const Jet gj = g.jet(p, 2);
  const ComplexQuaternion lhs = value_of(factor_pair(scalar_q(gj), log_gradient(fj)));
  const Jet3 g3 = Jet3::from(gj);
  return lhs - ComplexQuaternion(-g3.laplacian() + nu(p) * g3.value);
}

ComplexQuaternion dirac_residual(const QuaternionField3D& F, const ScalarField3& f, const Point3& p) {
  require_nonzero(f, p, "f");
  const QJ Fj = F.jet(p, 1);
  const ComplexQuaternion b = value_of(log_gradient(f.jet(p, 1)));
  return value_of(dirac_D(Fj)) + value_of(Fj) * b;
}

QuaternionField3D schr_to_dirac(const ScalarField3& g, const ScalarField3& f, const ScalarField3& nu,
                                std::span<const Point3> check_points, double tol) {
  if (!check_points.empty()) {
    check_schrodinger_solution(f, nu, check_points, tol);
    check_schrodinger_solution(g, nu, check_points, tol);
  }
  const ScalarField3 h = g / f;
  QuaternionField3D F = QuaternionField3D::vector(f * partial(h, 0), f * partial(h, 1), f * partial(h, 2));
  for (const Point3& p : check_points) {
    const double res = magnitude(dirac_residual(F, f, p));
    if (res > tol * (1.0 + magnitude(F(p)))) {
      throw ResidualCheckError("F = f D(g / f) fails (D + M^{Df/f}) F = 0 at " + at_string(p));
    }
  }
  return F;
}

ScalarField3 dirac_to_schr(const QuaternionField3D& F, const ScalarField3& f, const Point3& base,
                           const Antigradient3DOptions& opt) {
  const ScalarField3 inv = reciprocal(f);
  const QuaternionField3D G = QuaternionField3D::vector(F[1] * inv, F[2] * inv, F[3] * inv);
  return f * antigradient_3d_field(G, base, opt);
}

ComplexQuaternion divpgradq_residual_3d(const ScalarField3& phi, const ScalarField3& p,
                                        const ScalarField3& q, const ScalarField3& u0,
                                        const Point3& pt) {
  require_nonzero(p, pt, "p");
  require_nonzero(u0, pt, "u0");
  const Jet pj = p.jet(pt, 2);
  const Jet sp = sqrt(pj);
  const Jet phij = phi.jet(pt, 2);
  const Jet f = sp * u0.jet(pt, 2);
  const ComplexQuaternion rhs = value_of(factor_pair(scalar_q(sp * phij), log_gradient(f))) * sp.value();
  return ComplexQuaternion(div_a_grad_3d(p, phi, pt) + q(pt) * phij.value()) + rhs;
}

Vekua3DResidual vekua3d_residual(const QuaternionField3D& W, const ScalarField3& f, const Point3& p) {
  require_nonzero(f, p, "f");
  const Jet fj = f.jet(p, 2);
  const QJ Wj = W.jet(p, 1);
  const ComplexQuaternion b = value_of(log_gradient(fj.truncated(1)));
  Vekua3DResidual out;
  out.equation = value_of(dirac_D(Wj)) - b * conj_H(value_of(Wj));

  const Jet f1 = fj.truncated(1);
  const std::array<Jet, 3> fW{f1 * Wj.c[1], f1 * Wj.c[2], f1 * Wj.c[3]};
  out.divergence = fW[0].partial(0) + fW[1].partial(1) + fW[2].partial(2);
  const auto r = rot_jets(fW);
  const Jet h = Wj.c[0] * reciprocal(f1);
  const cplx fv = fj.value();
  for (int n = 0; n < 3; ++n) out.rotational[static_cast<std::size_t>(n)] = r[static_cast<std::size_t>(n)].value() / fv + fv * h.partial(n);
  return out;
}

ComplexQuaternion second_kind_residual_3d(const QuaternionField3D& W, const ScalarField3& f,
                                          const Point3& p) {
  require_nonzero(f, p, "f");
  const Jet fj = f.jet(p, 1);
  const QJ Wj = W.jet(p, 1);
  const QJ w{Wj.c[0] * reciprocal(fj), Wj.c[1] * fj, Wj.c[2] * fj, Wj.c[3] * fj};
  const cplx fv = fj.value();
  const cplx ratio = (1.0 - fv * fv) / (1.0 + fv * fv);
  return value_of(dirac_D(w)) - value_of(dirac_D(conj_H(w))) * ratio;
}

ScalarField3 manufactured_q_3d(const ScalarField3& p, const ScalarField3& u0) {
  return ScalarField3::generic([p, u0](const auto& pt) {
    using T = std::decay_t<decltype(pt[0])>;
    if constexpr (std::is_same_v<T, cplx>) {
      const Point3 at = real_point<cplx, 3>(pt);
      return -div_a_grad_3d(p, u0, at) / u0(at);
    } else {
      const Point3 at = real_point<Jet, 3>(pt);
      const int k = max_order(pt);
      if (k == 0) return Jet(-div_a_grad_3d(p, u0, at) / u0(at));
      const Jet a = p.jet(at, k + 1);
      const Jet u = u0.jet(at, k + 2);
      Jet div = (a * u.derivative(0)).derivative(0);
      for (int n = 1; n < 3; ++n) div = div + (a * u.derivative(n)).derivative(n);
      return compose(-checked_div(div, u.truncated(k)), std::span<const Jet>(pt.data(), 3));
    }
  });
}

cplx div_a_grad_3d(const ScalarField3& a, const ScalarField3& u, const Point3& p) {
  const Jet aj = a.jet(p, 1);
  const Jet3 uj = u.jet3(p);
  return aj.value() * uj.laplacian() + aj.partial(0) * uj.grad[0] + aj.partial(1) * uj.grad[1] +
         aj.partial(2) * uj.grad[2];
}

std::array<cplx, 3> rot_a_rot(const ScalarField3& a, const QuaternionField3D& v, const Point3& p) {
  const QJ vj = v.jet(p, 2);
  const auto r1 = rot_jets({vj.c[1], vj.c[2], vj.c[3]});
  Jet aj = a.jet(p, 1);
  if (aj.is_constant()) aj = Jet(3, 1, aj.value());
  const auto r2 = rot_jets({aj * r1[0], aj * r1[1], aj * r1[2]});
  return {r2[0].value(), r2[1].value(), r2[2].value()};
}

}  // namespace vekua
