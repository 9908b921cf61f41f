#pragma once

// Run configuration: a strict JSON document validated before any work.

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "vekua/vekua.hpp"

namespace vekua::cli {

using Json = nlohmann::ordered_json;

struct CoefficientsConfig {
  Expr p, q, u0;
  bool complex_branch = false;
};

struct GridSpec {
  double x0 = -0.9, x1 = 0.9;
  int nx = 10;
  double y0 = -0.9, y1 = 0.9;
  int ny = 10;

  std::vector<Point2> points() const;
};

struct PowersTask {
  int n_max = 2;
  GridSpec grid;
};

struct SolveTask {
  Expr boundary_data;
  std::optional<Expr> exact;
  int N = 21;
  int M = 0;
  int max_order = 20;  // largest formal-power exponent the basis may use
  int radii = 40;
  int angles = 64;
};

struct ConjugateTask {
  Expr u;
  Point2 base{0.0, 0.0};
  bool inverse = false;
  GridSpec grid;
};

struct VerifyTask {
  std::vector<std::string> suites;
  int samples = 20;
  std::uint64_t seed = 12345;
};

struct Verify3DTask {
  Expr f, nu, g;
  Expr p, u0;  // mainfact3 data; q is manufactured from p and u0
  double box = 1.0;
  std::vector<std::string> suites;
  int samples = 20;
  std::uint64_t seed = 12345;
};

/// Named tolerances; every entry can be set in the "tolerances" block or
/// with --tol-override KEY=VAL.
class Tolerances {
 public:
  Tolerances();
  void set(const std::string& key, double value);
  double operator[](const std::string& key) const;
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct Config {
  int schema_version = 1;
  Bindings params;
  std::optional<CoefficientsConfig> coefficients;
  std::optional<ConditionSData> condition_s;
  std::optional<Domain> domain;
  Point2 z0{0.0, 0.0};
  std::optional<PowersTask> powers;
  std::optional<SolveTask> solve;
  std::optional<ConjugateTask> conjugate;
  std::optional<VerifyTask> verify;
  std::optional<Verify3DTask> verify3d;
  Tolerances tol;

  FormalPowerOptions power_options() const;
  ConditionSOptions condition_s_options() const;
  AntiderivativeOptions antiderivative_options() const;
  EllipticCoefficients elliptic() const;
};

/// Parses and validates; throws ConfigError naming the offending key.
Config parse_config(const Json& doc);
Config load_config(const std::string& path);

/// "KEY=VAL" from the command line.
void apply_override(Config& cfg, const std::string& assignment);

}  // namespace vekua::cli
