#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fg::cli {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Runs the command line described by `args` (args[0] is the program name).
/// Results go to `out` unless an output path is given; errors are written to
/// `err` as one JSON object. Returns 0 on success, 1 when a verification fails
/// or a computation cannot be completed, 2 on invalid flags or parameters.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fg::cli
