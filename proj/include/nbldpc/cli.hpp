#pragma once

#include <iosfwd>

namespace nbldpc {

/// Entry point of the nbldpc tool. Subcommands: gen, simulate, bench, analyze.
/// Returns 0 on success, 2 on input or validation errors, 3 on engine errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nbldpc
