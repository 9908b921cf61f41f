#include "vekua/calculus.hpp"

#include <cstdio>

namespace vekua {

namespace {

struct Partials {
  BicomplexT<Jet> dx, dy;
};

Partials partials(const BicomplexT<Jet>& w) {
  return {{w.sc.derivative(0), w.vec.derivative(0)}, {w.sc.derivative(1), w.vec.derivative(1)}};
}

}  // namespace

BicomplexT<Jet> d_z(const BicomplexT<Jet>& w) {
  const auto [dx, dy] = partials(w);
  return (dx - times_k(dy)) * Jet(0.5);
}

BicomplexT<Jet> d_zbar(const BicomplexT<Jet>& w) {
  const auto [dx, dy] = partials(w);
  return (dx + times_k(dy)) * Jet(0.5);
}

Bicomplex d_z(const BicomplexField& w, const Point2& p) { return value_of(d_z(w.jet(p, 1))); }

Bicomplex d_zbar(const BicomplexField& w, const Point2& p) { return value_of(d_zbar(w.jet(p, 1))); }

namespace {

struct DerivativeField final : BicomplexField::Impl {
  DerivativeField(BicomplexField f, bool bar) : w(std::move(f)), conjugate(bar) {}
  Bicomplex value(const Point2& p) const override { return value_of(jet(p, 0)); }
  BicomplexT<Jet> jet(const Point2& p, int order) const override {
    const BicomplexT<Jet> local = w.jet(p, order + 1);
    return conjugate ? d_zbar(local) : d_z(local);
  }
  BicomplexField w;
  bool conjugate;
};

}  // namespace

BicomplexField d_z(const BicomplexField& w) {
  return BicomplexField(std::make_shared<DerivativeField>(w, false));
}

BicomplexField d_zbar(const BicomplexField& w) {
  return BicomplexField(std::make_shared<DerivativeField>(w, true));
}

Bicomplex line_integral(const BicomplexField& w, const Segment& seg) {
  const double dx = seg.end[0] - seg.start[0];
  const double dy = seg.end[1] - seg.start[1];
  if (dx == 0.0 && dy == 0.0) return {};
  const Bicomplex dz{dx, dy};
  return integrate_adaptive<Bicomplex>(
      [&](double s) {
        return w({seg.start[0] + s * dx, seg.start[1] + s * dy}) * dz;
      },
      seg.quad);
}

namespace {

double sign_of(Antiderivative kind) { return kind == Antiderivative::A ? -1.0 : 1.0; }

void check_compatibility(Antiderivative kind, const BicomplexField& phi, const Point2& base,
                         const Point2& target, const AntiderivativeOptions& opt) {
  const GaussRule& rule = gauss_legendre(opt.quad.nodes);
  // A needs dPhi1/dy + dPhi2/dx = 0; Abar needs dPhi1/dy - dPhi2/dx = 0.
  const double s = -sign_of(kind);
  auto check_at = [&](const Point2& p) {
    const BicomplexT<Jet> j = phi.jet(p, 1);
    const cplx a = j.sc.partial(1);
    const cplx b = j.vec.partial(0);
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    const double r = std::abs(a + s * b);
    if (r > opt.compat_tol * scale) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "integrand is not a %s-gradient: compatibility residual %.3g at (%.6g, %.6g)",
                    kind == Antiderivative::A ? "d/dz" : "d/dzbar", r, p[0], p[1]);
      throw CompatibilityError(buf);
    }
  };
  for (int i = 0; i < rule.n; ++i) {
    const double t = rule.nodes[i];
    check_at({base[0] + t * (target[0] - base[0]), target[1]});
    check_at({base[0], base[1] + t * (target[1] - base[1])});
  }
}

}  // namespace

cplx antiderivative(Antiderivative kind, const BicomplexField& phi, const Point2& base,
                    const Point2& target, const AntiderivativeOptions& opt) {
  if (opt.check) check_compatibility(kind, phi, base, target, opt);
  const double hx = target[0] - base[0];
  const double hy = target[1] - base[1];
  cplx leg1{};
  cplx leg2{};
  if (hx != 0.0) {
    leg1 = integrate_adaptive<cplx>(
        [&](double t) { return phi({base[0] + t * hx, target[1]}).sc * hx; }, opt.quad);
  }
  if (hy != 0.0) {
    leg2 = integrate_adaptive<cplx>(
        [&](double t) { return phi({base[0], base[1] + t * hy}).vec * hy; }, opt.quad);
  }
  return 2.0 * (leg1 + sign_of(kind) * leg2) + opt.c;
}

namespace {

struct AntiderivativeImpl final : ScalarField2::Impl {
  AntiderivativeImpl(Antiderivative k, BicomplexField f, Point2 b, AntiderivativeOptions o)
      : kind(k), phi(std::move(f)), base(b), opt(o) {}

  cplx value(const Point2& p) const override { return antiderivative(kind, phi, base, p, opt); }

  Jet jet(const Point2& p, int order) const override {
    const cplx v = value(p);
    if (order == 0) return Jet(2, 0, v);
    // A: grad = (2 Phi1, -2 Phi2); Abar: grad = (2 Phi1, 2 Phi2).
    const BicomplexT<Jet> j = phi.jet(p, order - 1);
    const std::array<Jet, 2> grad{j.sc * 2.0, j.vec * (2.0 * sign_of(kind))};
    return from_gradient(v, grad);
  }

  Antiderivative kind;
  BicomplexField phi;
  Point2 base;
  AntiderivativeOptions opt;
};

}  // namespace

ScalarField2 antiderivative_field(Antiderivative kind, const BicomplexField& phi,
                                  const Point2& base, const AntiderivativeOptions& opt) {
  return ScalarField2(std::make_shared<AntiderivativeImpl>(kind, phi, base, opt));
}

}  // namespace vekua
