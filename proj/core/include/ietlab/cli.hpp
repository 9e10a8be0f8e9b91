#pragma once

#include <string>
#include <vector>

namespace ietlab {

// Batch CLI entry point; returns the process exit status. Errors print one
// machine-parsable line "error: <reason>" on stderr.
int dispatch(const std::vector<std::string>& args);

}  // namespace ietlab
