#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slotprobe::cli {

// Exit status: 0 success, 1 operation error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slotprobe::cli
