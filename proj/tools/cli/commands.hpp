#pragma once

#include <ostream>

namespace mobius::cli {

// Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parameter error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mobius::cli
