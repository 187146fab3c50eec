#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcg {

// Exit status: 0 success (whatever the verdict), 2 malformed input or unknown
// subcommand, 3 model or window error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcg
