#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pqe/cli.hpp"
#include "pqe/cnf.hpp"

namespace pqe::test {

// y = 1, x1..x4 = 2..5
inline constexpr Var Y = 1, X1 = 2, X2 = 3, X3 = 4, X4 = 5;

inline Clause cl(ClauseId id, std::vector<int> lits) { return Clause::from_dimacs(id, lits); }

inline CnfFormula formula(int vars, std::vector<std::vector<int>> clauses, ClauseId first = 1) {
  CnfFormula h;
  h.var_count = vars;
  for (auto& c : clauses) h.clauses.push_back(cl(first++, c));
  return h;
}

// F = C1 C2, G = C3..C6, X = {x1..x4}.
inline EcnfProblem golden() {
  EcnfProblem p;
  p.x_vars = VarSet{X1, X2, X3, X4};
  p.f = formula(5, {{1, 2}, {-1, 4}});
  p.g = formula(5, {{-2, 3}, {-2, -3}, {-4, 5}, {1, -5}}, 3);
  return p;
}

inline const char* kGoldenPcnf =
    "c golden\n"
    "p pcnf 5 6 2\n"
    "e 2 3 4 5 0\n"
    "1 2 0\n-1 4 0\n-2 3 0\n-2 -3 0\n-4 5 0\n1 -5 0\n";

inline std::vector<std::vector<int>> dimacs(const CnfFormula& h) {
  std::vector<std::vector<int>> out;
  for (auto& c : h.clauses) out.push_back(c.to_dimacs());
  return out;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

inline CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch file under the system temp directory; removed on destruction.
class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pqe_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace pqe::test
