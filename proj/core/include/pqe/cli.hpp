#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pqe::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kCheckFailed = 3,
  kResource = 4,
  kSat = 10,
  kUnsat = 20,
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 10'000'000;
  int sat_cap = 24;
  int table_cap = 20;
  bool trace = false;

  // One comment line, printed first by every command.
  std::string header(const std::string& command) const;
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pqe::cli
