#pragma once

#include <ostream>

namespace loopfact {

/// Entry point of the command-line tool. Exit codes: 0 success,
/// 1 verification failure or computational error, 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace loopfact
