#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "suites.hpp"

using namespace vekua;
using namespace vekua::cli;

namespace {

Json load_json(const std::string& name) {
  std::ifstream in(std::string(VEKUA_CONFIG_DIR) + "/" + name);
  return Json::parse(in);
}

std::string config_error(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("vekua_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

/// CSV rows of powers.csv as strings, header skipped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("shipped configs parse") {
  for (const char* name : {"helmholtz.json", "laplace.json", "radial.json", "verify3d.json"}) {
    CHECK_NOTHROW(parse_config(load_json(name)));
  }
}

TEST_CASE("schema errors name the offending key") {
  Json doc = load_json("radial.json");
  doc["conditionS"] = Json{{"f_of_rho", "rho"}, {"s", "1/rho"}, {"S", "log(rho)"}};
  CHECK(config_error(doc).find("conditionS.rho") != std::string::npos);

  doc = load_json("helmholtz.json");
  doc["solve"]["max_order"] = 8;
  const std::string msg = config_error(doc);
  CHECK(msg.find("solve.N") != std::string::npos);
  CHECK(msg.find("max_order") != std::string::npos);

  doc = load_json("helmholtz.json");
  doc["solve"]["colocation"] = 3;
  CHECK(config_error(doc).find("colocation") != std::string::npos);

  doc = load_json("helmholtz.json");
  doc["schema_version"] = 2;
  CHECK(config_error(doc).find("schema_version") != std::string::npos);

  doc = load_json("helmholtz.json");
  doc["coefficients"]["u0"] = "exp(d*y)";
  CHECK_FALSE(config_error(doc).empty());
}

TEST_CASE("tolerance overrides") {
  Config cfg = parse_config(load_json("helmholtz.json"));
  apply_override(cfg, "chain=1e-3");
  CHECK(cfg.tol["chain"] == 1e-3);
  CHECK_THROWS_AS(apply_override(cfg, "no_such_tolerance=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "chain"), ConfigError);
}

TEST_CASE("powers output matches the closed forms") {
  const Config cfg = parse_config(load_json("helmholtz.json"));
  RunOptions run;
  run.out_dir = scratch("powers");
  std::ostringstream log;
  REQUIRE(cmd_powers(cfg, run, log) == 0);
  const auto rows = read_csv(run.out_dir / "powers.csv");
  REQUIRE(rows.size() == 100 * 3 * 2);
  double worst = 0.0;
  for (const auto& r : rows) {
    const double x = std::stod(r[0]), y = std::stod(r[1]);
    const int n = std::stoi(r[2]);
    const bool k = r[3] == "k";
    const double sc = std::stod(r[4]), vec = std::stod(r[6]);
    const double e = std::exp(y), em = std::exp(-y), sh = std::sinh(y);
    double want_sc = 0, want_vec = 0;
    switch (n * 2 + (k ? 1 : 0)) {
      case 0: want_sc = e; break;
      case 1: want_vec = em; break;
      case 2: want_sc = x * e; want_vec = sh; break;
      case 3: want_sc = -sh; want_vec = x * em; break;
      case 4: want_sc = (x * x - y) * e + sh; want_vec = 2 * x * sh; break;
      case 5: want_sc = -2 * x * sh; want_vec = (x * x + y) * em - sh; break;
    }
    worst = std::max({worst, std::abs(sc - want_sc), std::abs(vec - want_vec)});
    CHECK(std::stod(r[5]) == 0.0);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("powers output for f = 1 is z^n") {
  const Config cfg = parse_config(load_json("laplace.json"));
  RunOptions run;
  run.out_dir = scratch("powers_laplace");
  std::ostringstream log;
  REQUIRE(cmd_powers(cfg, run, log) == 0);
  double worst = 0.0;
  for (const auto& r : read_csv(run.out_dir / "powers.csv")) {
    const std::complex<double> z(std::stod(r[0]), std::stod(r[1]));
    auto zn = std::pow(z, std::stoi(r[2]));
    // seed k: k z^n = -Im + k Re
    if (r[3] == "k") zn = {-zn.imag(), zn.real()};
    worst = std::max({worst, std::abs(std::stod(r[4]) - zn.real()), std::abs(std::stod(r[6]) - zn.imag())});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("outputs do not depend on the thread count") {
  const Config cfg = parse_config(load_json("helmholtz.json"));
  std::ostringstream log;
  RunOptions one, many;
  one.out_dir = scratch("det1");
  one.threads = 1;
  many.out_dir = scratch("det4");
  many.threads = 4;
  REQUIRE(cmd_powers(cfg, one, log) == 0);
  REQUIRE(cmd_powers(cfg, many, log) == 0);
  REQUIRE(cmd_verify(cfg, one, log) == 0);
  REQUIRE(cmd_verify(cfg, many, log) == 0);
  for (const char* f : {"powers.csv", "powers_summary.json", "verify_report.json"}) {
    const std::string a = slurp(one.out_dir / f);
    CHECK(!a.empty());
    CHECK_MESSAGE(a == slurp(many.out_dir / f), f);
  }
}

TEST_CASE("a corrupted s(rho) preset fails verification") {
  Json doc = load_json("radial.json");
  doc["conditionS"]["s"] = "2/rho";
  const Config cfg = parse_config(doc);
  RunOptions run;
  run.out_dir = scratch("corrupt");
  std::ostringstream log;
  CHECK(cmd_verify(cfg, run, log) == 1);
  CHECK(log.str().find("ConditionSViolation") != std::string::npos);
  const Json report = Json::parse(slurp(run.out_dir / "verify_report.json"));
  CHECK(report["passed"] == false);
}

TEST_CASE("rank-deficient solves exit with a warning code") {
  Config cfg = parse_config(load_json("laplace.json"));
  apply_override(cfg, "rank_threshold=1.5");
  RunOptions run;
  run.out_dir = scratch("rank");
  std::ostringstream log;
  CHECK(cmd_solve(cfg, run, log) == 2);
  CHECK(log.str().find("RankDeficient") != std::string::npos);
}

TEST_CASE("verify3d runs on its defaults") {
  RunOptions run;
  run.out_dir = scratch("v3d");
  std::ostringstream log;
  CHECK(cmd_verify3d(Config{}, run, log) == 0);
  const Json report = Json::parse(slurp(run.out_dir / "verify3d_report.json"));
  CHECK(report["passed"] == true);
}
