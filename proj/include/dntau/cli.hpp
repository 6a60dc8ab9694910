#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dntau {

// Exit codes: 0 all checks pass, 1 a check failed or a computation raised, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

struct GoldenCase {
  std::string file;
  std::vector<std::string> args;
};
const std::vector<GoldenCase>& golden_cases();

}  // namespace dntau
