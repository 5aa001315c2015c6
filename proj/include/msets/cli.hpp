#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msets::cli {

// args excludes the program name. Returns 0 on success, 1 on domain errors
// and 2 on usage errors. Nothing is written to `out` unless the whole
// result was computed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msets::cli
