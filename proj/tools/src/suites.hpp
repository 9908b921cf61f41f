#pragma once

// Invariant suites behind `verify` and `verify3d`.

#include <string>
#include <vector>

#include "config.hpp"

namespace vekua::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  int samples = 0;
  std::string message;  // set when the suite could not run
};

std::vector<std::string> default_suites_2d(const Config& cfg);
std::vector<std::string> default_suites_3d();

/// Runs the requested 2D suites; unknown names are a ConfigError.
std::vector<SuiteResult> run_suites_2d(const Config& cfg, unsigned threads);
std::vector<SuiteResult> run_suites_3d(const Config& cfg, unsigned threads);

}  // namespace vekua::cli
