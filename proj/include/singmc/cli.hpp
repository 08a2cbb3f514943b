#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace singmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

/// Parses comma-separated reals ("0.5,-0.25"). Throws UsageError.
std::vector<double> parse_real_list(const std::string& text);

/// Runs one `singmc` invocation. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace singmc::cli
