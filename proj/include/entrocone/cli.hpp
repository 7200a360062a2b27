#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entrocone::cli {

// Exit codes: 0 success / all satisfied, 1 violation or failed criterion,
// 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrocone::cli
