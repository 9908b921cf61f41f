#include "vekua/pseudoanalytic.hpp"

#include <cstdio>
#include <string>

namespace vekua {

GeneratingPair main_pair(const ScalarField2& f) {
  return {BicomplexField(f), BicomplexField(ScalarField2::constant(0.0), reciprocal(f))};
}

void check_nondegenerate(const Bicomplex& F, const Bicomplex& G, double tol) {
  const cplx v = F.sc * G.vec - F.vec * G.sc;
  const double scale = std::sqrt((std::norm(F.sc) + std::norm(F.vec)) *
                                 (std::norm(G.sc) + std::norm(G.vec)));
  if (!(std::abs(v) > tol * scale)) {
    throw DegeneratePairError("Vec(conj(F) G) vanishes: not a generating pair at this point");
  }
}

CharacteristicT<Jet> characteristic_jets(const BicomplexT<Jet>& F, const BicomplexT<Jet>& G) {
  check_nondegenerate(value_of(F), value_of(G));
  const BicomplexT<Jet> inv = inverse(pair_denominator(F, G));
  const BicomplexT<Jet> Fz = d_z(F);
  const BicomplexT<Jet> Fzb = d_zbar(F);
  const BicomplexT<Jet> Gz = d_z(G);
  const BicomplexT<Jet> Gzb = d_zbar(G);
  const BicomplexT<Jet> cF = conj(F);
  const BicomplexT<Jet> cG = conj(G);
  return {
      -((cF * Gzb - Fzb * cG) * inv),
      (F * Gzb - Fzb * G) * inv,
      -((cF * Gz - Fz * cG) * inv),
      (F * Gz - Fz * G) * inv,
  };
}

CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair,
                                                       const Point2& p) {
  const auto c = characteristic_jets(pair.F.jet(p, 1), pair.G.jet(p, 1));
  return {value_of(c.a), value_of(c.b), value_of(c.A), value_of(c.B)};
}

GeneratingPair adjoint_pair(const GeneratingPair& pair) {
  auto F = BicomplexField::generic([pair](const auto& p) {
    return adjoint_values(pair.F.eval(p), pair.G.eval(p)).first;
  });
  auto G = BicomplexField::generic([pair](const auto& p) {
    return adjoint_values(pair.F.eval(p), pair.G.eval(p)).second;
  });
  return {F, G};
}

BicomplexT<Jet> fg_derivative_jet(const BicomplexT<Jet>& W, const BicomplexT<Jet>& F,
                                  const BicomplexT<Jet>& G) {
  const auto c = characteristic_jets(F, G);
  return d_z(W) - c.A * W - c.B * conj(W);
}

Bicomplex fg_derivative(const BicomplexField& W, const GeneratingPair& pair, const Point2& p) {
  return value_of(fg_derivative_jet(W.jet(p, 1), pair.F.jet(p, 1), pair.G.jet(p, 1)));
}

namespace {

struct FgDerivativeImpl final : BicomplexField::Impl {
  FgDerivativeImpl(BicomplexField w, GeneratingPair pr) : W(std::move(w)), pair(std::move(pr)) {}
  Bicomplex value(const Point2& p) const override { return value_of(jet(p, 0)); }
  BicomplexT<Jet> jet(const Point2& p, int order) const override {
    return fg_derivative_jet(W.jet(p, order + 1), pair.F.jet(p, order + 1),
                             pair.G.jet(p, order + 1));
  }
  BicomplexField W;
  GeneratingPair pair;
};

}  // namespace

BicomplexField fg_derivative(const BicomplexField& W, const GeneratingPair& pair) {
  return BicomplexField(std::make_shared<FgDerivativeImpl>(W, pair));
}

Bicomplex fg_integral(const BicomplexField& W, const GeneratingPair& pair, const Segment& seg) {
  const double dx = seg.end[0] - seg.start[0];
  const double dy = seg.end[1] - seg.start[1];
  if (dx == 0.0 && dy == 0.0) return {};
  const Bicomplex dz{dx, dy};
  // sc carries Sc int G* W dz, vec carries Sc int F* W dz.
  const Bicomplex I = integrate_adaptive<Bicomplex>(
      [&](double s) {
        const Point2 p{seg.start[0] + s * dx, seg.start[1] + s * dy};
        const auto [Fs, Gs] = adjoint_values(pair.F(p), pair.G(p));
        const Bicomplex wdz = W(p) * dz;
        return Bicomplex{(Gs * wdz).sc, (Fs * wdz).sc};
      },
      seg.quad);
  return pair.F(seg.end) * I.sc + pair.G(seg.end) * I.vec;
}

// ---------------------------------------------------------------------------

ConditionSData condition_s_preset(ConditionSPreset preset) {
  ConditionSData d;
  switch (preset) {
    case ConditionSPreset::CartesianX:
      d.rho = parse("x");
      d.s = parse("0");
      d.S = parse("0");
      break;
    case ConditionSPreset::CartesianY:
      d.rho = parse("y");
      d.s = parse("0");
      d.S = parse("0");
      break;
    case ConditionSPreset::Polar:
      d.rho = parse("atan2(y, x)");
      d.s = parse("0");
      d.S = parse("0");
      break;
    case ConditionSPreset::Radial:
      d.rho = parse("sqrt(x^2 + y^2)");
      d.s = parse("1/rho");
      d.S = parse("log(rho)");
      break;
    case ConditionSPreset::Parabolic:
      d.rho = parse("sqrt(x^2 + y^2) + x");
      d.s = parse("1/(2*rho)");
      d.S = parse("log(rho)/2");
      break;
  }
  return d;
}

std::optional<ConditionSPreset> condition_s_preset_from_name(std::string_view name) {
  if (name == "cartesian_x") return ConditionSPreset::CartesianX;
  if (name == "cartesian_y") return ConditionSPreset::CartesianY;
  if (name == "polar") return ConditionSPreset::Polar;
  if (name == "radial") return ConditionSPreset::Radial;
  if (name == "parabolic") return ConditionSPreset::Parabolic;
  return std::nullopt;
}

namespace {

template <class T>
T eval_in_rho(const Expr& e, const T& rho) {
  VarValues<T> v;
  v.set(Var::Rho, rho);
  return e.evaluate(v);
}

std::string at_point(const Point2& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " at (%.6g, %.6g)", p[0], p[1]);
  return buf;
}

ScalarField2 f_field(const ConditionSData& data, const ScalarField2& rho) {
  if (data.f_of_rho.empty()) {
    if (data.f.empty()) throw Error("Condition S data needs f_of_rho or f");
    return ScalarField2::from_expr(data.f, data.params);
  }
  const Expr fr = data.f_of_rho.bind(data.params);
  return ScalarField2::generic([rho, fr](const auto& p) { return eval_in_rho(fr, rho.eval(p)); });
}

}  // namespace

BicomplexField condition_s_phi(const ConditionSData& data) {
  const ScalarField2 rho = ScalarField2::from_expr(data.rho, data.params);
  const ScalarField2 rx = partial(rho, 0);
  const ScalarField2 ry = partial(rho, 1);
  const Expr S = data.S.bind(data.params);
  // k rho_z = (rho_y + k rho_x) / 2.
  return BicomplexField::generic([rho, rx, ry, S](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    const T e = elem::exp(-eval_in_rho(S, rho.eval(p))) * 0.5;
    return BicomplexT<T>{e * ry.eval(p), e * rx.eval(p)};
  });
}

GeneratingSequence build_sequence_condition_s(const ConditionSData& data,
                                              std::span<const Point2> grid,
                                              const ConditionSOptions& opt) {
  const ScalarField2 rho = ScalarField2::from_expr(data.rho, data.params);
  const Expr s = data.s.bind(data.params);
  const Expr S = data.S.bind(data.params);
  for (const Expr* e : {&s, &S}) {
    for (Var v : e->variables()) {
      if (v != Var::Rho) throw Error("s and S must be expressions in rho only");
    }
  }
  for (const Point2& p : grid) {
    const Jet2 r = rho.jet2(p);
    const cplx grad2 = r.dx * r.dx + r.dy * r.dy;
    const cplx sv = eval_in_rho(s, r.value);
    const cplx lap = r.laplacian();
    const double scale = 1.0 + std::abs(lap) + std::abs(sv) * std::abs(grad2);
    const double res = std::abs(lap - sv * grad2);
    if (res > opt.residual_tol * scale) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "Condition S fails: |lap(rho) - s(rho)|grad rho|^2| = %.3g", res);
      throw ConditionSViolation(buf + at_point(p));
    }
    const Jet Sj = eval_in_rho(S, Jet::variable(1, 1, 0, r.value));
    const cplx dS = Sj.is_constant() ? cplx{} : Sj.partial(0);
    if (std::abs(dS - sv) > opt.residual_tol * (1.0 + std::abs(sv))) {
      throw ConditionSViolation("S is not an antiderivative of s" + at_point(p));
    }
    const double phi2 = std::abs(0.25 * std::exp(-2.0 * Sj.value()) * grad2);
    if (!(phi2 >= opt.phi_floor) || !(phi2 <= opt.phi_bound)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "phi degenerates: |phi conj(phi)| = %.3g", phi2);
      throw PhiDegenerateError(buf + at_point(p));
    }
  }
  const ScalarField2 f = f_field(data, rho);
  return GeneratingSequence(main_pair(f), condition_s_phi(data), f);
}

GeneratingPair GeneratingSequence::pair(int m) const {
  if (m < 0) throw std::invalid_argument("negative generating-sequence index");
  const BicomplexField pw = ipow(phi_, m);
  return {pw * base_.F, pw * base_.G};
}

// ---------------------------------------------------------------------------

Bicomplex vekua_residual(const BicomplexField& W, const ScalarField2& f, const Point2& p) {
  const BicomplexT<Jet> w = W.jet(p, 1);
  const Jet fj = f.jet(p, 1);
  if (fj.value() == cplx{}) throw DomainError("f vanishes" + at_point(p));
  const Bicomplex fzb = value_of(d_zbar(BicomplexT<Jet>{fj, Jet(0.0)}));
  return value_of(d_zbar(w)) - fzb * (1.0 / fj.value()) * conj(value_of(w));
}

Bicomplex second_kind_residual(const BicomplexField& W, const ScalarField2& f, const Point2& p) {
  const BicomplexT<Jet> w = W.jet(p, 1);
  const Jet fj = f.jet(p, 1);
  const cplx fv = fj.value();
  if (std::abs(1.0 + fv * fv) < 1e-14) throw DomainError("1 + f^2 vanishes" + at_point(p));
  if (fv == cplx{}) throw DomainError("f vanishes" + at_point(p));
  const BicomplexT<Jet> small_w{w.sc / fj, w.vec * fj};
  const cplx coeff = (1.0 - fv * fv) / (1.0 + fv * fv);
  return value_of(d_zbar(small_w)) - value_of(d_zbar(conj(small_w))) * coeff;
}

std::vector<Bicomplex> taylor_coefficients(const BicomplexField& W, const GeneratingSequence& seq,
                                           const Point2& z0, int N, const TaylorOptions& opt) {
  if (N < 0 || N > kMaxJetOrder - 1) {
    throw std::invalid_argument("Taylor order must be 0.." + std::to_string(kMaxJetOrder - 1));
  }
  const GeneratingPair& base = seq.base();
  const double r = opt.probe_radius;
  const Point2 probes[] = {z0, {z0[0] + r, z0[1]}, {z0[0] - r, z0[1]}, {z0[0], z0[1] + r},
                           {z0[0], z0[1] - r}};
  for (const Point2& p : probes) {
    const BicomplexT<Jet> w = W.jet(p, 1);
    const auto c = characteristic_jets(base.F.jet(p, 1), base.G.jet(p, 1));
    const Bicomplex wv = value_of(w);
    const Bicomplex res =
        value_of(d_zbar(w)) - value_of(c.a) * wv - value_of(c.b) * conj(wv);
    if (magnitude(res) > opt.residual_tol * std::max(1.0, magnitude(wv))) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "function does not solve the Vekua equation: residual %.3g",
                    magnitude(res));
      throw NotPseudoanalyticError(buf + at_point(p));
    }
  }
  std::vector<Bicomplex> out;
  out.reserve(static_cast<std::size_t>(N) + 1);
  BicomplexT<Jet> cur = W.jet(z0, N);
  out.push_back(value_of(cur));
  double factorial = 1.0;
  std::vector<BicomplexT<Jet>> F;
  std::vector<BicomplexT<Jet>> G;
  for (int m = 0; m < N; ++m) {
    seq.pairs_at(coordinate_jets<2>(z0, N - m), m, 1, F, G);
    cur = fg_derivative_jet(cur, F[0], G[0]);
    factorial *= (m + 1);
    out.push_back(value_of(cur) * (1.0 / factorial));
  }
  return out;
}

}  // namespace vekua
