#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jhol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNegative = 2;

/// Runs one command line (argv[0] is the program name). Reports go to
/// files under --out and are echoed to `out`; diagnostics go to `err`.
/// Returns 0 on success, 1 on input errors, 2 on a negative outcome
/// (nonconvergence, failed check, invalid structure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jhol::cli
