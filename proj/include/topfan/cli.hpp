#pragma once

// The topfan command line: validate | classify | dual | transition | acs |
// eval | examples | report.
//
// Exit codes: 0 success, 1 domain or axiom failure, 2 parse, usage or I/O failure.

#include <ostream>

namespace topfan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace topfan::cli
