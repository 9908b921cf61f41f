#include "vekua/transforms.hpp"

#include <cmath>
#include <string>

#include "vekua/error.hpp"

namespace vekua {

namespace {

// Normalises a signed zero imaginary part so real negative p does not flip
// between +i and -i under the principal square root.
cplx clean(cplx v) { return v.imag() == 0.0 ? cplx(v.real(), 0.0) : v; }

Jet clean(Jet v) {
  v.coeff(0) = clean(v.coeff(0));
  return v;
}

BicomplexT<Jet> scalar_bc(const Jet& j) { return {j, Jet(0.0)}; }

std::string at_string(const Point2& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p[0], p[1]);
  return buf;
}

ScalarField2 abar_of_k_times(const ScalarField2& weight, const ScalarField2& inner,
                             const Point2& base, const AntiderivativeOptions& opt) {
  const BicomplexField phi = times_k(weight * d_zbar(BicomplexField(inner)));
  return antiderivative_field(Antiderivative::Abar, phi, base, opt);
}

}  // namespace

ScalarField2 manufactured_q(const ScalarField2& p, const ScalarField2& u0) {
  return ScalarField2::generic([p, u0](const auto& pt) {
    using T = std::decay_t<decltype(pt[0])>;
    if constexpr (std::is_same_v<T, cplx>) {
      return -div_a_grad(p, u0, real_point<cplx, 2>(pt)) / u0(real_point<cplx, 2>(pt));
    } else {
      const Point2 at = real_point<Jet, 2>(pt);
      const int k = max_order(pt);
      if (k == 0) return Jet(-div_a_grad(p, u0, at) / u0(at));
      const Jet a = p.jet(at, k + 1);
      const Jet u = u0.jet(at, k + 2);
      const Jet div = (a * u.derivative(0)).derivative(0) + (a * u.derivative(1)).derivative(1);
      const Jet local = -checked_div(div, u.truncated(k));
      return compose(local, std::span<const Jet>(pt.data(), 2));
    }
  });
}

ScalarField2 sqrt_p(const EllipticCoefficients& c) {
  const ScalarField2 p = c.p;
  return ScalarField2::generic([p](const auto& pt) { return elem::sqrt(clean(p.eval(pt))); });
}

ScalarField2 vekua_f(const EllipticCoefficients& c) { return sqrt_p(c) * c.u0; }

cplx div_a_grad(const ScalarField2& a, const ScalarField2& u, const Point2& pt) {
  const Jet aj = a.jet(pt, 1);
  const Jet2 uj = u.jet2(pt);
  return aj.value() * uj.laplacian() + aj.partial(0) * uj.dx + aj.partial(1) * uj.dy;
}

cplx div_p_grad_q(const EllipticCoefficients& c, const ScalarField2& u, const Point2& pt) {
  return div_a_grad(c.p, u, pt) + c.q(pt) * u(pt);
}

cplx schrodinger_residual(const ScalarField2& w, const ScalarField2& r, const Point2& pt) {
  const Jet2 wj = w.jet2(pt);
  return -wj.laplacian() + r(pt) * wj.value;
}

void validate_coefficients(const EllipticCoefficients& c, std::span<const Point2> path,
                           const CoefficientCheckOptions& opt) {
  cplx prev_root{};
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Point2& pt = path[i];
    const cplx p = clean(c.p(pt));
    const cplx u0 = c.u0(pt);
    if (!(std::abs(p) > opt.floor)) throw Error("p vanishes at " + at_string(pt));
    if (!(std::abs(u0) > opt.floor)) throw Error("u0 vanishes at " + at_string(pt));
    if (std::abs(p.imag()) > 1e-14 * std::abs(p) && !c.complex_branch_confirmed) {
      throw BranchError("p is not real at " + at_string(pt) +
                        "; confirm the principal branch of p^(1/2) to proceed");
    }
    const Jet pj = c.p.jet(pt, 1);
    const Jet2 uj = c.u0.jet2(pt);
    const cplx res = div_p_grad_q(c, c.u0, pt);
    const double scale = 1.0 + std::abs(p * uj.laplacian()) +
                         std::abs(pj.partial(0) * uj.dx + pj.partial(1) * uj.dy) +
                         std::abs(c.q(pt) * u0);
    if (!(std::abs(res) <= opt.residual_tol * scale)) {
      throw ResidualCheckError("u0 does not solve (div p grad + q) u = 0 at " + at_string(pt) +
                               " (residual " + std::to_string(std::abs(res)) + ")");
    }
    const cplx root = std::sqrt(p);
    if (i > 0 && std::abs(root - prev_root) > std::abs(root + prev_root)) {
      throw BranchError("principal branch of p^(1/2) jumps between " + at_string(path[i - 1]) +
                        " and " + at_string(pt));
    }
    prev_root = root;
  }
}

cplx schrodinger_reduction(const ScalarField2& p, const ScalarField2& q, const Point2& pt) {
  const Jet2 s = Jet2::from(elem::sqrt(clean(p.jet(pt, 2))));
  return checked_div(s.laplacian(), s.value) - checked_div(q(pt), p(pt));
}

Bicomplex factorization_residual_2d(const ScalarField2& phi, const EllipticCoefficients& c,
                                    const Point2& pt) {
  const Jet sp = elem::sqrt(clean(c.p.jet(pt, 2)));
  const Jet ph = phi.jet(pt, 2);
  const Jet f = sp * c.u0.jet(pt, 2);
  const BicomplexT<Jet> fz = d_zbar(scalar_bc(f));
  const Jet finv = reciprocal(f.truncated(1));
  const BicomplexT<Jet> b{fz.sc * finv, fz.vec * finv};

  const BicomplexT<Jet> g = scalar_bc(sp * ph);
  const BicomplexT<Jet> gt{g.sc.truncated(1), g.vec.truncated(1)};
  const BicomplexT<Jet> inner = d_zbar(g) - b * conj(gt);
  const BicomplexT<Jet> outer = d_z(inner) + b * conj(inner);
  const Bicomplex rhs = value_of(outer) * sp.value();

  const Jet2 pj = Jet2::from(c.p.jet(pt, 2));
  const Jet2 fj = Jet2::from(ph);
  const cplx op = pj.value * fj.laplacian() + pj.dx * fj.dx + pj.dy * fj.dy + c.q(pt) * fj.value;
  return Bicomplex(0.25 * op) - rhs;
}

cplx associated_potential_q1(const EllipticCoefficients& c, const Point2& pt) {
  const Jet pj = c.p.jet(pt, 1);
  const Jet uj = c.u0.jet(pt, 1);
  const cplx p = pj.value();
  const cplx u = uj.value();
  const cplx lpx = pj.partial(0) / p;
  const cplx lpy = pj.partial(1) / p;
  const cplx lux = uj.partial(0) / u;
  const cplx luy = uj.partial(1) / u;
  return -(c.q(pt) / p + 2.0 * (lpx * lux + lpy * luy) + 2.0 * (lux * lux + luy * luy)) / p;
}

ScalarField2 associated_potential_q1(const EllipticCoefficients& c) {
  const ScalarField2 p = c.p;
  const ScalarField2 u0 = c.u0;
  const ScalarField2 lpx = partial(p, 0) / p;
  const ScalarField2 lpy = partial(p, 1) / p;
  const ScalarField2 lux = partial(u0, 0) / u0;
  const ScalarField2 luy = partial(u0, 1) / u0;
  const ScalarField2 two = ScalarField2::constant(2.0);
  return -((c.q / p + two * (lpx * lux + lpy * luy) + two * (lux * lux + luy * luy)) / p);
}

ScalarField2 conjugate_solution(const ScalarField2& u, const EllipticCoefficients& c,
                                const Point2& base, const AntiderivativeOptions& opt) {
  return abar_of_k_times(c.p * c.u0 * c.u0, u / c.u0, base, opt) / c.u0;
}

ScalarField2 inverse_conjugate(const ScalarField2& v, const EllipticCoefficients& c,
                               const Point2& base, const AntiderivativeOptions& opt) {
  return -(c.u0 * abar_of_k_times(reciprocal(c.p * c.u0 * c.u0), c.u0 * v, base, opt));
}

ScalarField2 schrodinger_conjugate_W2(const ScalarField2& W1, const ScalarField2& f,
                                      const Point2& base, const AntiderivativeOptions& opt) {
  return abar_of_k_times(f * f, W1 / f, base, opt) / f;
}

ScalarField2 schrodinger_conjugate_W1(const ScalarField2& W2, const ScalarField2& f,
                                      const Point2& base, const AntiderivativeOptions& opt) {
  return -(f * abar_of_k_times(reciprocal(f * f), f * W2, base, opt));
}

ScalarField2 divform_conjugate(const ScalarField2& in, const ScalarField2& f, const Point2& base,
                               Direction dir, const AntiderivativeOptions& opt) {
  if (dir == Direction::Forward) return abar_of_k_times(f * f, in, base, opt);
  return -abar_of_k_times(reciprocal(f * f), in, base, opt);
}

cplx divgrad_conjugation_identity(const EllipticCoefficients& c, const ScalarField2& phi,
                                  const Point2& pt) {
  const Jet u0 = c.u0.jet(pt, 2);
  const Jet2 w = Jet2::from(checked_div(phi.jet(pt, 2), u0));
  const Jet a = c.p.jet(pt, 1) * u0.truncated(1) * u0.truncated(1);
  const cplx rhs =
      (a.value() * w.laplacian() + a.partial(0) * w.dx + a.partial(1) * w.dy) / u0.value();
  return div_p_grad_q(c, phi, pt) - rhs;
}

}  // namespace vekua
