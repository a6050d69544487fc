#pragma once

#include <string>
#include <vector>

namespace mgoe::cli {

// Entry point of the command-line tool, callable in-process for testing.
// Exit codes: 0 success, 2 usage, 3 bad configuration, 4 numerical failure,
// 5 I/O failure.
int run(int argc, const char* const* argv);

// Same, for argument lists without the program name.
int run(const std::vector<std::string>& args);

} // namespace mgoe::cli
