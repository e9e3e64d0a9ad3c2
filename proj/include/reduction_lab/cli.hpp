#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`
/// (or --out), diagnostics to `err`.
///
/// Subcommands: check-model, reduce, instrument, joint, demo-nonunique,
/// random-model. Exit 0 on pass, 1 on verification failure, 2 on usage or
/// parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlab::cli
