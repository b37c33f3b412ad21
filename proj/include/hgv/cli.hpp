#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgv::cli {

/// Runs one command line (without the program name). JSON or CSV goes to
/// `out`; the exit code is 0 on success, 2 for invalid input or parameters
/// (with a {"error": {"code", "message"}} object on `out`) and 1 for
/// internal failures.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace hgv::cli
