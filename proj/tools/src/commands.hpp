#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace vekua::cli {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;  // overrides verify/verify3d seeds
};

/// Exit codes: 0 success, 1 error, 2 success with warnings.
int cmd_powers(const Config& cfg, const RunOptions& run, std::ostream& log);
int cmd_solve(const Config& cfg, const RunOptions& run, std::ostream& log);
int cmd_conjugate(const Config& cfg, const RunOptions& run, std::ostream& log);
int cmd_verify(Config cfg, const RunOptions& run, std::ostream& log);
int cmd_verify3d(Config cfg, const RunOptions& run, std::ostream& log);

/// %.17g formatting used for every number written to CSV.
std::string fmt17(double v);

}  // namespace vekua::cli
