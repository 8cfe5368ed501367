#ifndef SMALELAB_TOOLS_CLI_HPP_
#define SMALELAB_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace smalelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFinding = 2;

/// Runs `smale-lab` with argv[1..] as arguments. Reports go to --out or, if
/// absent, to `out`; diagnostics go to `err`. Returns 0 when every check is
/// consistent with the known theorems, 2 when a candidate counterexample is
/// reported, 1 on usage or numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smalelab::cli

#endif  // SMALELAB_TOOLS_CLI_HPP_
