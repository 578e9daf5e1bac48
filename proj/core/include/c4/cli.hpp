#pragma once

#include <iosfwd>

namespace c4 {

/// Entry point behind the c4sweep binary.  Subcommands: measure, scan,
/// residual, validate, factorizing.  Exit codes: 0 success, 1 numerical
/// failure, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace c4
