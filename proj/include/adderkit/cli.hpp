#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adderkit::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Expands "design1..design6" style ranges inside a comma-separated list.
std::vector<std::string> expand_name_list(const std::string& text);

}  // namespace adderkit::cli
