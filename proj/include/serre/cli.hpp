#pragma once

#include <iosfwd>

namespace serre::cli {

// Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace serre::cli
