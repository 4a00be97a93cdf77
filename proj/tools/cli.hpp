#pragma once

#include <iosfwd>

namespace cmc::cli {

/// Entry point of the command-line tool. Returns 0 on success, 1 on a
/// numerical failure (JSON error object on `err`) or a failed verification,
/// 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmc::cli
