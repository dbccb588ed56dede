// cli.hpp: command-line front end
//
// Exit codes: 0 success, 1 usage error, 2 domain error (infeasible machine,
// unnormalized state, parameter out of range).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

inline constexpr const char* kToleranceEnv = "BCAST_TOLERANCE";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcast::cli
