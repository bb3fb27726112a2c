#pragma once

// Scenario runner behind the oplab executable.
//
// A scenario is {"command": <name>, "params": {...}}. Every command writes
// <command>.json (plus command-specific artifacts) and manifest.json into the
// output directory. Exit status: 0 when every certificate holds, 1 on input
// errors, 2 on certificate or numerical failures.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace oplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFailure = 2;

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    std::string out_dir = "oplab_out";
    int parallel = 1;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string message;                 // first failure or input error
    std::vector<std::string> failed;     // names of failing certificates
    std::vector<std::string> outputs;    // files written, relative to out_dir
};

RunResult run_scenario_file(const std::string& path, const RunOptions& opt);
/// raw is the exact scenario text; its SHA-256 goes into the manifest.
RunResult run_scenario_text(const std::string& raw, const RunOptions& opt);

/// Runs the built-in example suite, printing one line per check.
int selftest(std::ostream& out);

std::string sha256_hex(const std::string& bytes);

}  // namespace oplab::cli
