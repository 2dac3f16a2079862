#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qef::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Runs one subcommand; writes the structured report to `out` (or the file
// given by --out) and diagnostics to `err`.  Exit codes: 0 success,
// 1 malformed input, 2 domain errors (infeasible, branch cut, failed
// oracle cross-check, ...).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace qef::cli
