#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ogk::cli {

// Exit status: 0 OK, 1 verdict FAILED, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "π₂ ≅ Z/2" style subscripts.
std::string subscript(int n);

} // namespace ogk::cli
