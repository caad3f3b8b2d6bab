#pragma once

// Command-line front end. Every report is JSON with a schema_version field unless
// --text is given.

#include <ostream>
#include <string>
#include <vector>

namespace frob::cli {

enum ExitCode : int { kOk = 0, kMalformed = 2, kCapacity = 3, kInvariant = 4 };

/// Environment variable that overrides the default work budget of fpt (read by WorkBudget).
inline constexpr const char* kBudgetEnv = "FROBFPT_BUDGET";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frob::cli
