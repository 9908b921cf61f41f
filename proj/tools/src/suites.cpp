#include "suites.hpp"

#include <functional>
#include <numbers>
#include <optional>
#include <random>

namespace vekua::cli {

namespace {

std::mt19937_64 suite_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

/// Sum of c_e x^e0 y^e1 (z3^e2) over total degree <= degree, c_e uniform in [-1, 1].
template <int D>
ScalarField<D> random_polynomial(std::mt19937_64& rng, int degree) {
  std::vector<std::pair<std::array<int, 3>, double>> terms;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      for (int c = 0; a + b + c <= degree; ++c) {
        if (D == 2 && c > 0) continue;
        terms.push_back({{a, b, c}, uniform(rng, -1.0, 1.0)});
      }
    }
  }
  return ScalarField<D>::generic([terms](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    T sum(0.0);
    for (const auto& [e, c] : terms) {
      T m(c);
      for (int v = 0; v < D; ++v) {
        if (e[static_cast<std::size_t>(v)] > 0) m = m * elem::ipow(p[static_cast<std::size_t>(v)], e[static_cast<std::size_t>(v)]);
      }
      sum = sum + m;
    }
    return sum;
  });
}

/// A polynomial plus a*sin(<b, x>) plus c*exp(<d, x>) with random parameters.
ScalarField3 random_smooth_3d(std::mt19937_64& rng) {
  const ScalarField3 poly = random_polynomial<3>(rng, 3);
  const double a = uniform(rng, -1.0, 1.0);
  const double c = uniform(rng, -1.0, 1.0);
  std::array<double, 3> b{}, d{};
  for (auto& v : b) v = uniform(rng, -2.0, 2.0);
  for (auto& v : d) v = uniform(rng, -0.5, 0.5);
  const ScalarField3 extra = ScalarField3::generic([a, b, c, d](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    const T lin1 = p[0] * b[0] + p[1] * b[1] + p[2] * b[2];
    const T lin2 = p[0] * d[0] + p[1] * d[1] + p[2] * d[2];
    return elem::sin(lin1) * a + elem::exp(lin2) * c;
  });
  return poly + extra;
}

std::vector<Point2> sample_points_2d(const Config& cfg, std::mt19937_64& rng, int n) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    if (cfg.domain) {
      const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double s = 0.9 * std::sqrt(uniform(rng, 0.0, 1.0));
      const Point2 o = cfg.domain->offset(t);
      out.push_back({cfg.domain->center[0] + s * o[0], cfg.domain->center[1] + s * o[1]});
    } else {
      out.push_back({cfg.z0[0] + uniform(rng, -0.9, 0.9), cfg.z0[1] + uniform(rng, -0.9, 0.9)});
    }
  }
  return out;
}

std::vector<Point3> sample_points_3d(double box, std::mt19937_64& rng, int n) {
  std::vector<Point3> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({uniform(rng, -box, box), uniform(rng, -box, box), uniform(rng, -box, box)});
  }
  return out;
}

template <class P, class Fn>
double max_over(const std::vector<P>& pts, unsigned threads, Fn&& fn) {
  std::vector<double> r(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { r[i] = fn(pts[i]); });
  double m = 0.0;
  for (double v : r) m = std::max(m, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
  return m;
}

// --- 2D helpers on jets ------------------------------------------------------

Bicomplex scalar_dzbar(const Jet& f) { return value_of(d_zbar(BicomplexT<Jet>{f, Jet(0.0)})); }

Bicomplex vekua_res(const BicomplexT<Jet>& W, const Jet& f) {
  const Bicomplex fz = scalar_dzbar(f);
  const Bicomplex b{fz.sc / f.value(), fz.vec / f.value()};
  return value_of(d_zbar(W)) - b * conj(value_of(W));
}

Bicomplex second_kind_res(const BicomplexT<Jet>& W, const Jet& f) {
  const Jet f1 = f.truncated(1);
  const BicomplexT<Jet> w{W.sc.truncated(1) * reciprocal(f1), W.vec.truncated(1) * f1};
  const cplx fv = f.value();
  return value_of(d_zbar(w)) - value_of(d_zbar(conj(w))) * ((1.0 - fv * fv) / (1.0 + fv * fv));
}

/// a Laplacian(u) + grad a . grad u from an order-1 jet of a and order-2 jet of u.
cplx div_grad_jets(const Jet& a, const Jet& u) {
  const Jet2 uj = Jet2::from(u);
  return a.value() * uj.laplacian() + a.partial(0) * uj.dx + a.partial(1) * uj.dy;
}

struct Context2D {
  const Config& cfg;
  unsigned threads;
  std::optional<GeneratingSequence> seq;
  std::string seq_error;

  const GeneratingSequence& sequence() {
    if (!seq) throw Error(seq_error.empty() ? "no conditionS block" : seq_error);
    return *seq;
  }
};

SuiteResult make(const std::string& name, double threshold, int samples) {
  SuiteResult r;
  r.name = name;
  r.threshold = threshold;
  r.samples = samples;
  return r;
}

using Suite2D = std::function<double(Context2D&, std::mt19937_64&, int&)>;

double suite_condition_s(Context2D& ctx, std::mt19937_64&, int&) {
  ctx.sequence();
  return 0.0;
}

double suite_vekua_residual(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const GeneratingSequence& seq = ctx.sequence();
  const FormalPowerEngine engine(seq, ctx.cfg.z0, 4, {Bicomplex(1.0), Bicomplex::k()}, 0,
                                 ctx.cfg.power_options());
  const ScalarField2 f = seq.f().value();
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  return max_over(pts, ctx.threads, [&](const Point2& p) {
    const auto W = engine.evaluate_jet(p, 1);
    const Jet fj = f.jet(p, 1);
    double m = 0.0;
    for (const auto& w : W) m = std::max(m, magnitude(vekua_res(w, fj)));
    return m;
  });
}

double suite_second_kind(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const GeneratingSequence& seq = ctx.sequence();
  const FormalPowerEngine engine(seq, ctx.cfg.z0, 4, {Bicomplex(1.0), Bicomplex::k()}, 0,
                                 ctx.cfg.power_options());
  const ScalarField2 f = seq.f().value();
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  return max_over(pts, ctx.threads, [&](const Point2& p) {
    const auto W = engine.evaluate_jet(p, 1);
    const Jet fj = f.jet(p, 1);
    double m = 0.0;
    for (const auto& w : W) m = std::max(m, magnitude(second_kind_res(w, fj)));
    return m;
  });
}

double suite_successor(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const GeneratingSequence& seq = ctx.sequence();
  const std::vector<Bicomplex> seeds{Bicomplex(1.0), Bicomplex::k()};
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  double worst = 0.0;
  for (int m = 0; m <= 2; ++m) {
    const FormalPowerEngine lo(seq, ctx.cfg.z0, 3, seeds, m, ctx.cfg.power_options());
    const FormalPowerEngine hi(seq, ctx.cfg.z0, 2, seeds, m + 1, ctx.cfg.power_options());
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point2& p) {
      const auto a = lo.evaluate_jet(p, 1);
      const auto b = hi.evaluate(p);
      std::vector<BicomplexT<Jet>> F, G;
      seq.pairs_at(coordinate_jets<2>(p, 1), m, 1, F, G);
      double r = 0.0;
      for (std::size_t s = 0; s < 2; ++s) {
        for (int n = 1; n <= 3; ++n) {
          const Bicomplex d = value_of(fg_derivative_jet(a[s * 4 + static_cast<std::size_t>(n)], F[0], G[0]));
          const Bicomplex want = b[s * 3 + static_cast<std::size_t>(n - 1)] * cplx(n);
          r = std::max(r, magnitude(d - want));
        }
      }
      return r;
    }));
  }
  return worst;
}

double suite_taylor(Context2D& ctx, std::mt19937_64&, int& count) {
  const GeneratingSequence& seq = ctx.sequence();
  const std::vector<Bicomplex> seeds{Bicomplex(1.0), Bicomplex::k()};
  const FormalPowerEngine engine(seq, ctx.cfg.z0, 2, seeds, 0, ctx.cfg.power_options());
  double worst = 0.0;
  count = 0;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (int n = 0; n <= 2; ++n) {
      const auto a = taylor_coefficients(engine.field(n, s), seq, ctx.cfg.z0, n);
      for (int j = 0; j <= n; ++j) {
        const Bicomplex want = j == n ? seeds[s] : Bicomplex(0.0);
        worst = std::max(worst, magnitude(a[static_cast<std::size_t>(j)] - want));
      }
      ++count;
    }
  }
  return worst;
}

double suite_chain(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const GeneratingSequence& seq = ctx.sequence();
  const FormalPowerEngine engine(seq, ctx.cfg.z0, 3, {Bicomplex(1.0), Bicomplex::k()}, 0,
                                 ctx.cfg.power_options());
  const ScalarField2 f = seq.f().value();
  std::optional<EllipticCoefficients> coeffs;
  if (ctx.cfg.coefficients) coeffs = ctx.cfg.elliptic();
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  return max_over(pts, ctx.threads, [&](const Point2& p) {
    const auto W = engine.evaluate_jet(p, 2);
    const Jet fj = f.jet(p, 2);
    const Jet2 f2 = Jet2::from(fj);
    const cplx r1 = f2.laplacian() / f2.value;
    const cplx r2 = 2.0 * (f2.dx * f2.dx + f2.dy * f2.dy) / (f2.value * f2.value) - r1;
    const Jet f1 = fj.truncated(1);
    double m = 0.0;
    for (const auto& w : W) {
      const Jet2 w1 = Jet2::from(w.sc);
      const Jet2 w2 = Jet2::from(w.vec);
      m = std::max(m, std::abs(-w1.laplacian() + r1 * w1.value));
      m = std::max(m, std::abs(-w2.laplacian() + r2 * w2.value));
      m = std::max(m, std::abs(div_grad_jets(f1 * f1, w.sc * reciprocal(fj))));
      m = std::max(m, std::abs(div_grad_jets(reciprocal(f1 * f1), w.vec * fj)));
      if (coeffs) {
        const Jet pj = coeffs->p.jet(p, 2);
        const Jet sp = sqrt(pj);
        const Jet u = w.sc * reciprocal(sp);
        const Jet v = w.vec * sp;
        m = std::max(m, std::abs(div_grad_jets(pj.truncated(1), u) + coeffs->q(p) * u.value()));
        m = std::max(m, std::abs(div_grad_jets(reciprocal(pj.truncated(1)), v) +
                                 associated_potential_q1(*coeffs, p) * v.value()));
      }
    }
    return m;
  });
}

double suite_factorization(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const EllipticCoefficients c = ctx.cfg.elliptic();
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ScalarField2 phi = random_polynomial<2>(rng, 3);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point2& p) {
      return magnitude(factorization_residual_2d(phi, c, p));
    }));
  }
  return worst;
}

double suite_divgrad(Context2D& ctx, std::mt19937_64& rng, int& count) {
  const EllipticCoefficients c = ctx.cfg.elliptic();
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ScalarField2 phi = random_polynomial<2>(rng, 3);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point2& p) {
      return std::abs(divgrad_conjugation_identity(c, phi, p));
    }));
  }
  return worst;
}

double suite_basis(Context2D& ctx, std::mt19937_64& rng, int& count) {
  if (!ctx.cfg.domain) throw Error("basis_residual needs a domain block");
  DirichletProblem pr{ctx.cfg.elliptic(), ctx.sequence()};
  pr.z0 = ctx.cfg.z0;
  pr.domain = *ctx.cfg.domain;
  pr.N = ctx.cfg.solve ? std::min(ctx.cfg.solve->N, 9) : 9;
  pr.threads = ctx.threads;
  pr.powers = ctx.cfg.power_options();
  const auto basis = build_basis(pr, pr.N);
  const auto pts = sample_points_2d(ctx.cfg, rng, count);
  double worst = 0.0;
  for (int m = 0; m < basis->size(); ++m) {
    const ScalarField2 u = basis->field(m);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point2& p) {
      return std::abs(div_p_grad_q(pr.coeffs, u, p));
    }));
  }
  return worst;
}

struct Entry2D {
  const char* name;
  const char* tol_key;
  Suite2D fn;
};

const std::vector<Entry2D>& registry_2d() {
  static const std::vector<Entry2D> r{
      {"condition_s", nullptr, suite_condition_s},
      {"vekua_residual", "vekua_residual", suite_vekua_residual},
      {"successor", "successor", suite_successor},
      {"second_kind", "second_kind", suite_second_kind},
      {"taylor", "taylor", suite_taylor},
      {"chain", "chain", suite_chain},
      {"factorization", "factorization", suite_factorization},
      {"divgrad_identity", "divgrad_identity", suite_divgrad},
      {"basis_residual", "basis_residual", suite_basis},
  };
  return r;
}

// --- 3D ----------------------------------------------------------------------

using QJ = QuaternionT<Jet>;

struct Context3D {
  const Config& cfg;
  const Verify3DTask& task;
  unsigned threads;
  ScalarField3 f, nu, g;
};

ScalarField3 field3(const Config& cfg, const Expr& e) { return ScalarField3::from_expr(e, cfg.params); }

using Suite3D = std::function<double(Context3D&, std::mt19937_64&, int&)>;

double suite_dirac_square(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ScalarField3 g = random_smooth_3d(rng);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& p) {
      const Jet gj = g.jet(p, 2);
      const ComplexQuaternion dd = value_of(dirac_D(dirac_D(QJ(gj))));
      const Jet3 g3 = Jet3::from(gj);
      return magnitude(dd - ComplexQuaternion(-g3.laplacian())) / (1.0 + std::abs(g3.laplacian()));
    }));
  }
  return worst;
}

double suite_leibniz(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ScalarField3 P0 = random_smooth_3d(rng);
    const QuaternionField3D Q({random_smooth_3d(rng), random_smooth_3d(rng), random_smooth_3d(rng),
                               random_smooth_3d(rng)});
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& p) {
      const Jet a = P0.jet(p, 1);
      const QJ q = Q.jet(p, 1);
      const ComplexQuaternion lhs = value_of(dirac_D(q * a));
      const ComplexQuaternion rhs = value_of(dirac_D(QJ(a))) * value_of(q) + value_of(dirac_D(q)) * a.value();
      return magnitude(lhs - rhs) / (1.0 + magnitude(lhs));
    }));
  }
  return worst;
}

double suite_factorization_3d(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  check_schrodinger_solution(ctx.f, ctx.nu, pts);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ScalarField3 g = random_polynomial<3>(rng, 3);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& p) {
      return magnitude(factorization_residual_3d(g, ctx.f, ctx.nu, p));
    }));
  }
  return worst;
}

double suite_mainfact_3d(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const ScalarField3 p = field3(ctx.cfg, ctx.task.p);
  const ScalarField3 u0 = field3(ctx.cfg, ctx.task.u0);
  const ScalarField3 q = manufactured_q_3d(p, u0);
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ScalarField3 phi = random_polynomial<3>(rng, 3);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& pt) {
      return magnitude(divpgradq_residual_3d(phi, p, q, u0, pt));
    }));
  }
  return worst;
}

double suite_roundtrip_3d(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  const QuaternionField3D F = schr_to_dirac(ctx.g, ctx.f, ctx.nu, pts, ctx.cfg.tol["roundtrip_3d"]);
  Antigradient3DOptions opt;
  opt.compat_tol = ctx.cfg.tol["compat_tol"];
  const ScalarField3 g2 = dirac_to_schr(F, ctx.f, {0.0, 0.0, 0.0}, opt);
  std::vector<cplx> diff(pts.size()), fv(pts.size());
  parallel_for(pts.size(), ctx.threads, [&](std::size_t i) {
    diff[i] = g2(pts[i]) - ctx.g(pts[i]);
    fv[i] = ctx.f(pts[i]);
  });
  cplx num{};
  double den = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    num += std::conj(fv[i]) * diff[i];
    den += std::norm(fv[i]);
  }
  const cplx c = num / den;
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(diff[i] - c * fv[i]));
  return worst;
}

/// Random complex combination of the quartet (f, i/f, j/f, k/f).
QuaternionField3D quartet_combo(const ScalarField3& f, std::mt19937_64& rng) {
  std::array<cplx, 4> a;
  for (auto& v : a) v = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  const ScalarField3 inv = reciprocal(f);
  return QuaternionField3D({a[0] * f, a[1] * inv, a[2] * inv, a[3] * inv});
}

double suite_vekua_3d(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  const ScalarField3 f = ctx.f;
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const QuaternionField3D W = quartet_combo(f, rng);
    const ScalarField3 u = W[0] / f;
    const QuaternionField3D fW = QuaternionField3D::vector(f * W[1], f * W[2], f * W[3]);
    const ScalarField3 f2 = f * f;
    const ScalarField3 fm2 = reciprocal(f2);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& p) {
      const Vekua3DResidual r = vekua3d_residual(W, f, p);
      double m = std::max(magnitude(r.equation), std::abs(r.divergence));
      for (const cplx& v : r.rotational) m = std::max(m, std::abs(v));
      const Jet3 fj = f.jet3(p);
      const Jet3 w0 = W[0].jet3(p);
      m = std::max(m, std::abs(-w0.laplacian() + fj.laplacian() / fj.value * w0.value));
      m = std::max(m, std::abs(div_a_grad_3d(f2, u, p)));
      for (const cplx& v : rot_a_rot(fm2, fW, p)) m = std::max(m, std::abs(v));
      return m;
    }));
  }
  return worst;
}

double suite_second_kind_3d(Context3D& ctx, std::mt19937_64& rng, int& count) {
  const auto pts = sample_points_3d(ctx.task.box, rng, count);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const QuaternionField3D W = quartet_combo(ctx.f, rng);
    worst = std::max(worst, max_over(pts, ctx.threads, [&](const Point3& p) {
      return magnitude(second_kind_residual_3d(W, ctx.f, p));
    }));
  }
  return worst;
}

struct Entry3D {
  const char* name;
  Suite3D fn;
};

const std::vector<Entry3D>& registry_3d() {
  static const std::vector<Entry3D> r{
      {"dirac_square", suite_dirac_square},     {"leibniz", suite_leibniz},
      {"factorization_3d", suite_factorization_3d}, {"mainfact_3d", suite_mainfact_3d},
      {"roundtrip_3d", suite_roundtrip_3d},     {"vekua_3d", suite_vekua_3d},
      {"second_kind_3d", suite_second_kind_3d},
  };
  return r;
}

}  // namespace

std::vector<std::string> default_suites_2d(const Config& cfg) {
  std::vector<std::string> out{"condition_s", "vekua_residual", "successor", "second_kind", "taylor", "chain"};
  if (cfg.coefficients) {
    out.push_back("factorization");
    out.push_back("divgrad_identity");
    if (cfg.domain) out.push_back("basis_residual");
  }
  return out;
}

std::vector<std::string> default_suites_3d() {
  std::vector<std::string> out;
  for (const auto& e : registry_3d()) out.push_back(e.name);
  return out;
}

std::vector<SuiteResult> run_suites_2d(const Config& cfg, unsigned threads) {
  if (!cfg.verify) throw ConfigError("missing required key 'verify'");
  const VerifyTask& task = *cfg.verify;
  const std::vector<std::string> names = task.suites.empty() ? default_suites_2d(cfg) : task.suites;
  for (const auto& n : names) {
    bool known = false;
    for (const auto& e : registry_2d()) known = known || n == e.name;
    if (!known) throw ConfigError("unknown verify suite '" + n + "'");
  }

  Context2D ctx{cfg, threads, std::nullopt, {}};
  if (cfg.condition_s) {
    std::mt19937_64 rng = suite_rng(task.seed, 1000);
    std::vector<Point2> grid = sample_points_2d(cfg, rng, 64);
    grid.push_back(cfg.z0);
    try {
      ctx.seq = build_sequence_condition_s(*cfg.condition_s, grid, cfg.condition_s_options());
    } catch (const ConditionSViolation& e) {
      ctx.seq_error = std::string("ConditionSViolation: ") + e.what();
    } catch (const Error& e) {
      ctx.seq_error = e.what();
    }
  }

  std::vector<SuiteResult> out;
  for (const auto& name : names) {
    std::size_t idx = 0;
    while (registry_2d()[idx].name != name) ++idx;
    const Entry2D& e = registry_2d()[idx];
    SuiteResult r = make(name, e.tol_key ? cfg.tol[e.tol_key] : 0.0, task.samples);
    std::mt19937_64 rng = suite_rng(task.seed, idx);
    try {
      r.max_residual = e.fn(ctx, rng, r.samples);
      r.passed = r.max_residual <= r.threshold;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.message = ex.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SuiteResult> run_suites_3d(const Config& cfg, unsigned threads) {
  if (!cfg.verify3d) throw ConfigError("missing required key 'verify3d'");
  const Verify3DTask& task = *cfg.verify3d;
  const std::vector<std::string> names = task.suites.empty() ? default_suites_3d() : task.suites;
  for (const auto& n : names) {
    bool known = false;
    for (const auto& e : registry_3d()) known = known || n == e.name;
    if (!known) throw ConfigError("unknown verify3d suite '" + n + "'");
  }
  Context3D ctx{cfg, task, threads, field3(cfg, task.f), field3(cfg, task.nu), field3(cfg, task.g)};
  std::vector<SuiteResult> out;
  for (const auto& name : names) {
    std::size_t idx = 0;
    while (registry_3d()[idx].name != name) ++idx;
    SuiteResult r = make(name, cfg.tol[name], task.samples);
    std::mt19937_64 rng = suite_rng(task.seed, idx);
    try {
      r.max_residual = registry_3d()[idx].fn(ctx, rng, r.samples);
      r.passed = r.max_residual <= r.threshold;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.message = ex.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace vekua::cli
