#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace vekua::cli {

namespace {

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

std::string key_path(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

const Json& require(const Json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + key_path(where, key) + "'");
  return obj.at(key);
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("'" + path + "' must be a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError("'" + path + "' must be an integer");
  return v.get<int>();
}

bool boolean(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError("'" + path + "' must be true or false");
  return v.get<bool>();
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("'" + path + "' must be a string");
  return v.get<std::string>();
}

Point2 point(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError("'" + path + "' must be [x, y]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

std::vector<std::string> strings(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError("'" + path + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(text(e, path));
  return out;
}

Expr expression(const Json& v, const std::string& path, const std::set<std::string>& params) {
  const std::string s = text(v, path);
  try {
    return parse(s, params);
  } catch (const ParseError& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void read_params(const Json& obj, const std::string& where, Bindings& out) {
  if (!obj.contains("params")) return;
  const Json& p = obj.at("params");
  if (!p.is_object()) throw ConfigError("'" + key_path(where, "params") + "' must be an object");
  for (const auto& [name, value] : p.items()) {
    out[name] = number(value, key_path(where, "params") + "." + name);
  }
}

GridSpec read_grid(const Json& obj, const std::string& where) {
  GridSpec g;
  check_keys(obj, where, {"x", "y"});
  auto axis = [&](const char* key, double& a, double& b, int& n) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    const std::string path = key_path(where, key);
    if (!v.is_array() || v.size() != 3) throw ConfigError("'" + path + "' must be [min, max, count]");
    a = number(v[0], path);
    b = number(v[1], path);
    n = integer(v[2], path);
    if (n < 1) throw ConfigError("'" + path + "' count must be positive");
  };
  axis("x", g.x0, g.x1, g.nx);
  axis("y", g.y0, g.y1, g.ny);
  return g;
}

std::uint64_t seed_value(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError("'" + path + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

std::vector<Point2> GridSpec::points() const {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int i = 0; i < nx; ++i) {
    const double x = nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1);
      out.push_back({x, y});
    }
  }
  return out;
}

Tolerances::Tolerances()
    : values_{{"quad.rel_tol", 1e-11},        {"quad.abs_tol", 1e-14},
              {"det_tol", 1e-12},             {"conditionS.residual_tol", 1e-8},
              {"compat_tol", 1e-7},           {"rank_threshold", 1e14},
              {"vekua_residual", 1e-6},       {"successor", 1e-6},
              {"factorization", 1e-9},        {"divgrad_identity", 1e-9},
              {"chain", 1e-6},                {"second_kind", 1e-7},
              {"basis_residual", 1e-6},       {"taylor", 1e-7},
              {"dirac_square", 1e-12},        {"leibniz", 1e-12},
              {"factorization_3d", 1e-9},     {"mainfact_3d", 1e-9},
              {"roundtrip_3d", 1e-8},         {"vekua_3d", 1e-8},
              {"second_kind_3d", 1e-8}} {}

void Tolerances::set(const std::string& key, double value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + key + "'");
  if (!(value > 0.0)) throw ConfigError("tolerance '" + key + "' must be positive");
  it->second = value;
}

double Tolerances::operator[](const std::string& key) const { return values_.at(key); }

FormalPowerOptions Config::power_options() const {
  FormalPowerOptions o;
  o.quad.rel_tol = tol["quad.rel_tol"];
  o.quad.abs_tol = tol["quad.abs_tol"];
  o.det_tol = tol["det_tol"];
  return o;
}

ConditionSOptions Config::condition_s_options() const {
  ConditionSOptions o;
  o.residual_tol = tol["conditionS.residual_tol"];
  return o;
}

AntiderivativeOptions Config::antiderivative_options() const {
  AntiderivativeOptions o;
  o.compat_tol = tol["compat_tol"];
  o.quad.rel_tol = tol["quad.rel_tol"];
  o.quad.abs_tol = tol["quad.abs_tol"];
  return o;
}

EllipticCoefficients Config::elliptic() const {
  if (!coefficients) throw ConfigError("missing required key 'coefficients'");
  EllipticCoefficients c{ScalarField2::from_expr(coefficients->p, params),
                         ScalarField2::from_expr(coefficients->q, params),
                         ScalarField2::from_expr(coefficients->u0, params)};
  c.complex_branch_confirmed = coefficients->complex_branch;
  return c;
}

Config parse_config(const Json& doc) {
  check_keys(doc, "", {"schema_version", "coefficients", "conditionS", "domain", "z0", "powers",
                       "solve", "conjugate", "verify", "verify3d", "tolerances"});
  Config cfg;
  cfg.schema_version = integer(require(doc, "", "schema_version"), "schema_version");
  if (cfg.schema_version != 1) {
    throw ConfigError("unsupported schema_version " + std::to_string(cfg.schema_version) + " (expected 1)");
  }

  if (doc.contains("coefficients")) read_params(doc.at("coefficients"), "coefficients", cfg.params);
  if (doc.contains("conditionS")) read_params(doc.at("conditionS"), "conditionS", cfg.params);
  std::set<std::string> names;
  for (const auto& [k, v] : cfg.params) names.insert(k);

  if (doc.contains("coefficients")) {
    const Json& c = doc.at("coefficients");
    check_keys(c, "coefficients", {"p", "q", "u0", "params", "complex_branch"});
    CoefficientsConfig cc;
    cc.p = expression(require(c, "coefficients", "p"), "coefficients.p", names);
    cc.q = expression(require(c, "coefficients", "q"), "coefficients.q", names);
    cc.u0 = expression(require(c, "coefficients", "u0"), "coefficients.u0", names);
    if (c.contains("complex_branch")) cc.complex_branch = boolean(c.at("complex_branch"), "coefficients.complex_branch");
    cfg.coefficients = cc;
  }

  if (doc.contains("conditionS")) {
    const Json& c = doc.at("conditionS");
    check_keys(c, "conditionS", {"preset", "rho", "s", "S", "f_of_rho", "f", "params"});
    ConditionSData d;
    if (c.contains("preset")) {
      const std::string name = text(c.at("preset"), "conditionS.preset");
      const auto preset = condition_s_preset_from_name(name);
      if (!preset) throw ConfigError("unknown conditionS.preset '" + name + "'");
      d = condition_s_preset(*preset);
    } else {
      d.rho = expression(require(c, "conditionS", "rho"), "conditionS.rho", names);
      d.s = expression(require(c, "conditionS", "s"), "conditionS.s", names);
      d.S = expression(require(c, "conditionS", "S"), "conditionS.S", names);
    }
    if (c.contains("preset")) {
      if (c.contains("rho")) d.rho = expression(c.at("rho"), "conditionS.rho", names);
      if (c.contains("s")) d.s = expression(c.at("s"), "conditionS.s", names);
      if (c.contains("S")) d.S = expression(c.at("S"), "conditionS.S", names);
    }
    if (c.contains("f_of_rho") == c.contains("f")) {
      throw ConfigError("conditionS needs exactly one of 'conditionS.f_of_rho' and 'conditionS.f'");
    }
    if (c.contains("f_of_rho")) d.f_of_rho = expression(c.at("f_of_rho"), "conditionS.f_of_rho", names);
    if (c.contains("f")) d.f = expression(c.at("f"), "conditionS.f", names);
    d.params = cfg.params;
    cfg.condition_s = d;
  }

  if (doc.contains("domain")) {
    const Json& d = doc.at("domain");
    const std::string type = text(require(d, "domain", "type"), "domain.type");
    Point2 center{0.0, 0.0};
    if (type == "disk") {
      check_keys(d, "domain", {"type", "radius", "center"});
      if (d.contains("center")) center = point(d.at("center"), "domain.center");
      const double r = d.contains("radius") ? number(d.at("radius"), "domain.radius") : 1.0;
      cfg.domain = Domain::disk(r, center);
    } else if (type == "ellipse") {
      check_keys(d, "domain", {"type", "a", "b", "center"});
      if (d.contains("center")) center = point(d.at("center"), "domain.center");
      cfg.domain = Domain::ellipse(number(require(d, "domain", "a"), "domain.a"),
                                   number(require(d, "domain", "b"), "domain.b"), center);
    } else if (type == "radial") {
      check_keys(d, "domain", {"type", "r", "center"});
      if (d.contains("center")) center = point(d.at("center"), "domain.center");
      cfg.domain = Domain::radial(expression(require(d, "domain", "r"), "domain.r", names), cfg.params, center);
    } else {
      throw ConfigError("domain.type must be disk, ellipse or radial (got '" + type + "')");
    }
  }

  if (doc.contains("z0")) cfg.z0 = point(doc.at("z0"), "z0");

  if (doc.contains("powers")) {
    const Json& p = doc.at("powers");
    check_keys(p, "powers", {"n_max", "grid"});
    PowersTask t;
    if (p.contains("n_max")) t.n_max = integer(p.at("n_max"), "powers.n_max");
    if (t.n_max < 0) throw ConfigError("'powers.n_max' must be nonnegative");
    if (p.contains("grid")) t.grid = read_grid(p.at("grid"), "powers.grid");
    cfg.powers = t;
  }

  if (doc.contains("solve")) {
    const Json& s = doc.at("solve");
    check_keys(s, "solve", {"boundary_data", "exact", "N", "M", "max_order", "grid"});
    SolveTask t;
    t.boundary_data = expression(require(s, "solve", "boundary_data"), "solve.boundary_data", names);
    if (s.contains("exact")) t.exact = expression(s.at("exact"), "solve.exact", names);
    if (s.contains("N")) t.N = integer(s.at("N"), "solve.N");
    if (s.contains("M")) t.M = integer(s.at("M"), "solve.M");
    if (s.contains("max_order")) t.max_order = integer(s.at("max_order"), "solve.max_order");
    if (s.contains("grid")) {
      const Json& g = s.at("grid");
      check_keys(g, "solve.grid", {"radii", "angles"});
      if (g.contains("radii")) t.radii = integer(g.at("radii"), "solve.grid.radii");
      if (g.contains("angles")) t.angles = integer(g.at("angles"), "solve.grid.angles");
    }
    if (t.N < 1) throw ConfigError("'solve.N' must be positive");
    if (t.N / 2 > t.max_order) {
      throw ConfigError("solve.N = " + std::to_string(t.N) + " needs formal powers up to order " +
                        std::to_string(t.N / 2) + " but solve.max_order is " + std::to_string(t.max_order));
    }
    if (t.M != 0 && t.M < t.N) throw ConfigError("'solve.M' must be at least solve.N");
    if (t.radii < 1 || t.angles < 1) throw ConfigError("'solve.grid' counts must be positive");
    cfg.solve = t;
  }

  if (doc.contains("conjugate")) {
    const Json& c = doc.at("conjugate");
    check_keys(c, "conjugate", {"u", "base", "direction", "grid"});
    ConjugateTask t;
    t.u = expression(require(c, "conjugate", "u"), "conjugate.u", names);
    if (c.contains("base")) t.base = point(c.at("base"), "conjugate.base");
    if (c.contains("direction")) {
      const std::string dir = text(c.at("direction"), "conjugate.direction");
      if (dir != "forward" && dir != "inverse") {
        throw ConfigError("'conjugate.direction' must be forward or inverse");
      }
      t.inverse = dir == "inverse";
    }
    if (c.contains("grid")) t.grid = read_grid(c.at("grid"), "conjugate.grid");
    cfg.conjugate = t;
  }

  if (doc.contains("verify")) {
    const Json& v = doc.at("verify");
    check_keys(v, "verify", {"suites", "samples", "seed"});
    VerifyTask t;
    if (v.contains("suites")) t.suites = strings(v.at("suites"), "verify.suites");
    if (v.contains("samples")) t.samples = integer(v.at("samples"), "verify.samples");
    if (v.contains("seed")) t.seed = seed_value(v.at("seed"), "verify.seed");
    if (t.samples < 1) throw ConfigError("'verify.samples' must be positive");
    cfg.verify = t;
  }

  if (doc.contains("verify3d")) {
    const Json& v = doc.at("verify3d");
    check_keys(v, "verify3d", {"f", "nu", "g", "p", "u0", "box", "suites", "samples", "seed", "params"});
    Bindings extra;
    read_params(v, "verify3d", extra);
    for (const auto& [k, val] : extra) {
      cfg.params[k] = val;
      names.insert(k);
    }
    Verify3DTask t;
    t.f = expression(v.contains("f") ? v.at("f") : Json("exp(z3)"), "verify3d.f", names);
    t.nu = expression(v.contains("nu") ? v.at("nu") : Json("1"), "verify3d.nu", names);
    t.g = expression(v.contains("g") ? v.at("g") : Json("exp(x)"), "verify3d.g", names);
    t.p = expression(v.contains("p") ? v.at("p") : Json("exp(x)"), "verify3d.p", names);
    t.u0 = expression(v.contains("u0") ? v.at("u0") : Json("exp(z3)"), "verify3d.u0", names);
    if (v.contains("box")) t.box = number(v.at("box"), "verify3d.box");
    if (!(t.box > 0.0)) throw ConfigError("'verify3d.box' must be positive");
    if (v.contains("suites")) t.suites = strings(v.at("suites"), "verify3d.suites");
    if (v.contains("samples")) t.samples = integer(v.at("samples"), "verify3d.samples");
    if (v.contains("seed")) t.seed = seed_value(v.at("seed"), "verify3d.seed");
    if (t.samples < 1) throw ConfigError("'verify3d.samples' must be positive");
    cfg.verify3d = t;
  }

  if (doc.contains("tolerances")) {
    const Json& t = doc.at("tolerances");
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [k, v] : t.items()) cfg.tol.set(k, number(v, "tolerances." + k));
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

void apply_override(Config& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--tol-override expects KEY=VAL, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string val = assignment.substr(eq + 1);
  double v = 0.0;
  std::istringstream is(val);
  if (!(is >> v) || !is.eof()) throw ConfigError("--tol-override value for '" + key + "' is not a number");
  cfg.tol.set(key, v);
}

}  // namespace vekua::cli
