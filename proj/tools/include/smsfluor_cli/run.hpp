#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smsfluor_cli/config.hpp"

namespace smsfluor::cli {

struct RunOptions {
    std::ostream* log = nullptr;  // progress messages when non-null
};

struct RunResult {
    std::vector<std::string> files;  // CSV files, then the metadata sidecar
    double wall_time_seconds = 0.0;
};

// Executes the configured task and writes <output>.<task>.csv plus
// <output>.meta.json. Library errors propagate unchanged.
RunResult run(const RunConfig& config, const RunOptions& options = {});

// CSV body (header comments, column line, rows) for a configuration,
// without touching the file system.
std::string render_csv(const RunConfig& config);

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace smsfluor::cli
