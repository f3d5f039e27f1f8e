#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace locfin::cli {

/// Exit codes: 0 certified or success, 2 refuted, 3 inconclusive, 1 input
/// error, 64 usage error.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kRefuted = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kUsage = 64;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locfin::cli
