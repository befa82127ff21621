#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line surface. Output is a pure function of the input files, the
// flags, and the seed. Exit codes: 0 success or PASS, 1 a FAIL verdict,
// 2 usage or input errors (reported on the error stream).
namespace sba::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace sba::cli
