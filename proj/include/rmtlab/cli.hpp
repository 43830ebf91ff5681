#pragma once

#include <string>
#include <vector>

namespace rmtlab::cli {

/// Experiment runner. Subcommands: gamma, sample, counting, scan,
/// universality, interlace, transport, covariance. Returns 0 on success,
/// 1 on configuration errors, 2 on numeric-guard failures.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args exclude the program name

}  // namespace rmtlab::cli
