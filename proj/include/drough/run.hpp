#pragma once

#include <string>

namespace drough {

// Command layer shared by the C API and (through it) the CLI.
// Exit codes: 0 success, 1 check failure, 2 usage / IO error.
struct RunResult {
    int exit_code = 0;
    std::string summary_json;
};

extern const char* kVersion;

// command in {gen-driver, validate, solve, converge, stability};
// overrides_json may carry {"seed": u64, "threads": n} from CLI flags.
RunResult run_command(const std::string& command, const std::string& config_json,
                      const std::string& out_dir, const std::string& overrides_json);

}  // namespace drough
