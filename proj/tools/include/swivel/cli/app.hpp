#pragma once

#include <iosfwd>

namespace swivel::cli {

/// Entry point of the `swivel` tool. Exit codes: 0 pass, 1 property
/// violation, 2 usage or configuration error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swivel::cli
