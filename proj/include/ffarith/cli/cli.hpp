#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffarith::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command line (without the program name). Reports go to `out`
/// unless `--out` names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffarith::cli
