#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lticlust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one `lticlust` subcommand (gen, dist, cluster, features, gmm,
/// plotdata). `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lticlust::cli
