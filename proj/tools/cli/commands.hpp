#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skewfatou::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 10;
inline constexpr int kExitUndecided = 20;

/// Runs `skewfatou <classify|axiom-a|link|render|sweep|examples> ...` with
/// args excluding the program name. Documents go to --out or `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewfatou::cli
