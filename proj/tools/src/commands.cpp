#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "suites.hpp"

namespace vekua::cli {

namespace {

std::ofstream open_out(const RunOptions& run, const std::string& name) {
  std::filesystem::create_directories(run.out_dir);
  const auto path = run.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const RunOptions& run, const std::string& name, const Json& doc) {
  std::ofstream out = open_out(run, name);
  out << doc.dump(2) << '\n';
}

/// Finite doubles as numbers, anything else as a string so the JSON stays valid.
Json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json cnum(cplx v) { return Json::array({num(v.real()), num(v.imag())}); }

struct Stats {
  double max = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  void add(double v) {
    max = std::max(max, v);
    sum_sq += v * v;
    ++n;
  }
  Json json() const {
    return Json{{"max", num(max)}, {"rms", num(n ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0)}, {"count", n}};
  }
};

GeneratingSequence make_sequence(const Config& cfg, std::vector<Point2> grid) {
  if (!cfg.condition_s) throw ConfigError("missing required key 'conditionS'");
  grid.push_back(cfg.z0);
  return build_sequence_condition_s(*cfg.condition_s, grid, cfg.condition_s_options());
}

Bicomplex vekua_res(const BicomplexT<Jet>& W, const Jet& f) {
  const Bicomplex fz = value_of(d_zbar(BicomplexT<Jet>{f, Jet(0.0)}));
  const Bicomplex b{fz.sc / f.value(), fz.vec / f.value()};
  return value_of(d_zbar(W)) - b * conj(value_of(W));
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_powers(const Config& cfg, const RunOptions& run, std::ostream& log) {
  if (!cfg.powers) throw ConfigError("missing required key 'powers'");
  const PowersTask& task = *cfg.powers;
  const std::vector<Point2> pts = task.grid.points();
  const GeneratingSequence seq = make_sequence(cfg, pts);
  const std::vector<Bicomplex> seeds{Bicomplex(1.0), Bicomplex::k()};
  const FormalPowerEngine engine(seq, cfg.z0, task.n_max, seeds, 0, cfg.power_options());
  const ScalarField2 f = seq.f().value();

  const std::size_t per = static_cast<std::size_t>(task.n_max) + 1;
  std::vector<std::vector<Bicomplex>> values(pts.size());
  std::vector<double> residual(pts.size());
  std::vector<int> panels(pts.size());
  parallel_for(pts.size(), run.threads, [&](std::size_t i) {
    values[i] = engine.evaluate(pts[i], &panels[i]);
    const auto jets = engine.evaluate_jet(pts[i], 1);
    const Jet fj = f.jet(pts[i], 1);
    double m = 0.0;
    for (const auto& w : jets) m = std::max(m, magnitude(vekua_res(w, fj)));
    residual[i] = m;
  });

  std::ofstream csv = open_out(run, "powers.csv");
  csv << "x,y,n,seed,Sc_re,Sc_im,Vec_re,Vec_im\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t n = 0; n < per; ++n) {
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const Bicomplex& z = values[i][s * per + n];
        csv << fmt17(pts[i][0]) << ',' << fmt17(pts[i][1]) << ',' << n << ',' << (s == 0 ? "1" : "k") << ','
            << fmt17(z.sc.real()) << ',' << fmt17(z.sc.imag()) << ',' << fmt17(z.vec.real()) << ','
            << fmt17(z.vec.imag()) << '\n';
      }
    }
  }

  Stats res;
  int max_panels = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    res.add(residual[i]);
    max_panels = std::max(max_panels, panels[i]);
  }
  const Json summary{{"command", "powers"},
                     {"n_max", task.n_max},
                     {"center", Json::array({cfg.z0[0], cfg.z0[1]})},
                     {"points", pts.size()},
                     {"rows", pts.size() * per * seeds.size()},
                     {"max_panels", max_panels},
                     {"vekua_residual", res.json()}};
  write_json(run, "powers_summary.json", summary);
  log << "powers: " << pts.size() * per * seeds.size() << " rows, max Vekua residual " << fmt17(res.max) << '\n';
  return 0;
}

int cmd_solve(const Config& cfg, const RunOptions& run, std::ostream& log) {
  if (!cfg.solve) throw ConfigError("missing required key 'solve'");
  if (!cfg.domain) throw ConfigError("missing required key 'domain'");
  const SolveTask& task = *cfg.solve;
  const EllipticCoefficients coeffs = cfg.elliptic();

  const int M = task.M > 0 ? task.M : 4 * task.N;
  std::vector<Point2> check = interior_grid(*cfg.domain, 8, 32);
  validate_coefficients(coeffs, boundary_points(*cfg.domain, M));
  validate_coefficients(coeffs, check);

  DirichletProblem pr{coeffs, make_sequence(cfg, check)};
  pr.z0 = cfg.z0;
  pr.domain = *cfg.domain;
  pr.boundary_data = ScalarField2::from_expr(task.boundary_data, cfg.params);
  pr.N = task.N;
  pr.M = M;
  pr.threads = run.threads;
  pr.powers = cfg.power_options();
  pr.rank_threshold = cfg.tol["rank_threshold"];
  const SolutionExpansion sol = solve_collocation(pr);

  std::ofstream csv = open_out(run, "solve_coefficients.csv");
  csv << "index,n,seed,a_re,a_im\n";
  Json coeff_json = Json::array();
  for (std::size_t j = 0; j < sol.coefficients.size(); ++j) {
    const BasisTerm& t = sol.basis->terms()[j];
    csv << j + 1 << ',' << t.n << ',' << (t.seed_k ? "k" : "1") << ',' << fmt17(sol.coefficients[j].real()) << ','
        << fmt17(sol.coefficients[j].imag()) << '\n';
    coeff_json.push_back(Json{{"n", t.n}, {"seed", t.seed_k ? "k" : "1"}, {"a", cnum(sol.coefficients[j])}});
  }

  Json report{{"command", "solve"},
              {"N", task.N},
              {"M", M},
              {"condition_number", num(sol.condition_number)},
              {"rank_deficient", sol.rank_deficient},
              {"boundary_residual", Json{{"max", num(sol.boundary_max_residual)}, {"rms", num(sol.boundary_rms_residual)}}},
              {"coefficients", coeff_json},
              {"warnings", sol.warnings}};

  if (task.exact) {
    const ScalarField2 exact = ScalarField2::from_expr(*task.exact, cfg.params);
    const std::vector<Point2> grid = interior_grid(*cfg.domain, task.radii, task.angles);
    const ErrorReport rep = error_report(sol, exact, grid, run.threads);
    std::ofstream err = open_out(run, "solve_errors.csv");
    err << "x,y,approx_re,approx_im,exact_re,exact_im,error\n";
    for (const auto& r : rep.rows) {
      err << fmt17(r.p[0]) << ',' << fmt17(r.p[1]) << ',' << fmt17(r.approx.real()) << ',' << fmt17(r.approx.imag())
          << ',' << fmt17(r.exact.real()) << ',' << fmt17(r.exact.imag()) << ',' << fmt17(r.error) << '\n';
    }
    report["max_error"] = num(rep.max_error);
    report["rms_error"] = num(rep.rms_error);
    report["grid"] = Json{{"radii", task.radii}, {"angles", task.angles}};
    log << "solve: max interior error " << fmt17(rep.max_error) << '\n';
  }
  write_json(run, "solve_report.json", report);
  log << "solve: condition number " << fmt17(sol.condition_number) << ", boundary max residual "
      << fmt17(sol.boundary_max_residual) << '\n';
  for (const auto& w : sol.warnings) log << "warning: " << w << '\n';
  return sol.rank_deficient ? 2 : 0;
}

int cmd_conjugate(const Config& cfg, const RunOptions& run, std::ostream& log) {
  if (!cfg.conjugate) throw ConfigError("missing required key 'conjugate'");
  const ConjugateTask& task = *cfg.conjugate;
  const EllipticCoefficients c = cfg.elliptic();
  const std::vector<Point2> pts = task.grid.points();
  validate_coefficients(c, pts);
  const AntiderivativeOptions opt = cfg.antiderivative_options();
  const ScalarField2 in = ScalarField2::from_expr(task.u, cfg.params);

  // The kernel of the inverse map: u0 for u, 1/u0 for v.
  const ScalarField2 out = task.inverse ? inverse_conjugate(in, c, task.base, opt) : conjugate_solution(in, c, task.base, opt);
  const ScalarField2 back = task.inverse ? conjugate_solution(out, c, task.base, opt) : inverse_conjugate(out, c, task.base, opt);
  const ScalarField2 kernel = task.inverse ? reciprocal(c.u0) : c.u0;

  std::vector<cplx> vin(pts.size()), vout(pts.size()), vback(pts.size()), vker(pts.size());
  std::vector<double> eq(pts.size());
  const ScalarField2 q1 = associated_potential_q1(c);
  parallel_for(pts.size(), run.threads, [&](std::size_t i) {
    vin[i] = in(pts[i]);
    vout[i] = out(pts[i]);
    vback[i] = back(pts[i]);
    vker[i] = kernel(pts[i]);
    // The input must solve its equation: (div p grad + q) u = 0, or the associated one for v.
    eq[i] = task.inverse ? std::abs(div_a_grad(reciprocal(c.p), in, pts[i]) + q1(pts[i]) * vin[i])
                         : std::abs(div_p_grad_q(c, in, pts[i]));
  });
  cplx numr{};
  double den = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    numr += std::conj(vker[i]) * (vback[i] - vin[i]);
    den += std::norm(vker[i]);
  }
  const cplx k = den > 0.0 ? numr / den : cplx{};

  std::ofstream csv = open_out(run, "conjugate.csv");
  csv << "x,y,in_re,in_im,out_re,out_im,roundtrip_dev\n";
  Stats dev, eqs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = std::abs(vback[i] - vin[i] - k * vker[i]);
    dev.add(d);
    eqs.add(eq[i]);
    csv << fmt17(pts[i][0]) << ',' << fmt17(pts[i][1]) << ',' << fmt17(vin[i].real()) << ',' << fmt17(vin[i].imag())
        << ',' << fmt17(vout[i].real()) << ',' << fmt17(vout[i].imag()) << ',' << fmt17(d) << '\n';
  }
  const Json report{{"command", "conjugate"},
                    {"direction", task.inverse ? "inverse" : "forward"},
                    {"base", Json::array({task.base[0], task.base[1]})},
                    {"input_equation_residual", eqs.json()},
                    {"roundtrip_constant", cnum(k)},
                    {"roundtrip_deviation", dev.json()}};
  write_json(run, "conjugate_report.json", report);
  log << "conjugate: round-trip deviation " << fmt17(dev.max) << '\n';
  return 0;
}

namespace {

int finish_verify(const char* command, const char* file, std::uint64_t seed,
                  const std::vector<SuiteResult>& results, const RunOptions& run, std::ostream& log) {
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    const bool ran = r.message.empty();
    Json s{{"name", r.name},
           {"passed", r.passed},
           {"max_residual", ran ? num(r.max_residual) : Json(nullptr)},
           {"threshold", num(r.threshold)},
           {"samples", r.samples}};
    if (!r.message.empty()) s["message"] = r.message;
    suites.push_back(std::move(s));
    char line[160];
    if (ran) {
      std::snprintf(line, sizeof line, "%s %-18s max_residual=%.3e threshold=%.1e", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_residual, r.threshold);
      log << line;
    } else {
      log << "FAIL " << r.name << " (" << r.message << ")";
    }
    log << '\n';
  }
  write_json(run, file, Json{{"command", command}, {"seed", seed}, {"passed", all}, {"suites", suites}});
  return all ? 0 : 1;
}

}  // namespace

int cmd_verify(Config cfg, const RunOptions& run, std::ostream& log) {
  if (!cfg.verify) cfg.verify = VerifyTask{};
  if (run.seed) cfg.verify->seed = *run.seed;
  const auto results = run_suites_2d(cfg, run.threads);
  return finish_verify("verify", "verify_report.json", cfg.verify->seed, results, run, log);
}

int cmd_verify3d(Config cfg, const RunOptions& run, std::ostream& log) {
  if (!cfg.verify3d) {
    Json doc{{"schema_version", 1}, {"verify3d", Json::object()}};
    cfg.verify3d = parse_config(doc).verify3d;
  }
  if (run.seed) cfg.verify3d->seed = *run.seed;
  const auto results = run_suites_3d(cfg, run.threads);
  return finish_verify("verify3d", "verify3d_report.json", cfg.verify3d->seed, results, run, log);
}

}  // namespace vekua::cli
