#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>

namespace matchctl {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2 };

/// Runs one configured command, writing report.json (and CSV artifacts) into out_dir.
int run_command(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Runs every sweep entry concurrently, each in out_dir/run-NNN; writes sweep.json.
int run_sweep(const std::vector<RunConfig>& runs, const std::string& out_dir, std::ostream& log);

}  // namespace matchctl
