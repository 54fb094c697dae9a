#pragma once

#include <iosfwd>

namespace segmatch::cli {

/// Runs one `segmatch` invocation. Returns 0 on success, 1 when a decision or
/// match query comes out negative, 2 on input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace segmatch::cli
