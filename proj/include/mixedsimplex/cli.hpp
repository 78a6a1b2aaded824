#pragma once

// Command-line front end. Exit status: 0 success, 1 domain error (the error
// name is the first token on stderr), 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace mixedsimplex::cli {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace mixedsimplex::cli
