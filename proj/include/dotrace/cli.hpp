#pragma once

#include <iosfwd>

namespace dotrace::cli {

// Entry point behind the `dotrace` binary. Primary data goes to `out` (or the
// --out file); progress and metadata go to `err`. Returns 0 on success, 1 on a
// verification failure, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dotrace::cli
