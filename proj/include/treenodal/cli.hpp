#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treenodal {

// Entry point of the command-line tool; args excludes the program name.
// Returns 0 on success, 1 when a check fails, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treenodal
