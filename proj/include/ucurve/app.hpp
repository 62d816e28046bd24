#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucurve::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_input = 2;  // malformed or inconsistent input
inline constexpr int exit_cap = 3;    // domain or node cap exceeded

// Runs the command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ucurve::cli
