#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cesaro::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameterError = 1;
inline constexpr int kExitRuntimeError = 2;

/// Relative --output paths are resolved under this directory when it is set.
inline constexpr const char* kOutputDirEnv = "CESARO_OUTPUT_DIR";

/// Runs one command line. `args` excludes the program name. Artifacts go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cesaro::cli
