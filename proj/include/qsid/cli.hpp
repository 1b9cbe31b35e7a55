#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsid::cli {

enum ExitCode { ok = 0, discrepancy = 1, usage = 2, internal = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsid::cli
