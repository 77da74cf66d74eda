#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iggp {

/// Entry point of the `iggp` tool: subcommands parse, simulate, gen,
/// baseline and eval. Returns the process exit status: 0 on success, 1 for
/// a domain error (invalid game, signature or dataset content), 2 for I/O or
/// usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iggp
