#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghnabla::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kNotDifferentiable = 2;
inline constexpr int kHypothesisFailed = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghnabla::cli
