#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isolab::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

// args excludes the program name. The report goes to --output or `out`;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace isolab::cli
