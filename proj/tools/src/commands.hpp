#pragma once

#include <iosfwd>

#include "strongfield/error.hpp"

namespace strongfield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// 2 for configuration/input problems, 3 for everything a solver reports.
int exit_code(ErrorCode code);

/// The whole command-line front end; `out` receives results written to "-",
/// `err` diagnostics and progress.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strongfield::cli
