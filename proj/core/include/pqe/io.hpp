#pragma once

// Text formats: PCNF (exists X [F and G] in one file), DIMACS CNF, and
// MCT (transition systems).  Clause ids follow file order from 1.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/mc.hpp"

namespace pqe::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// p pcnf <vars> <clauses> <f_count>
// e <var>* 0
// <clauses, first f_count form F>
EcnfProblem parse_pcnf(std::string_view text);
CnfFormula parse_dimacs(std::string_view text);
mc::TransitionSystem parse_mct(std::string_view text);

std::string write_pcnf(const EcnfProblem& p, const std::vector<std::string>& comments = {});
std::string write_dimacs(const CnfFormula& h, const std::vector<std::string>& comments = {});
std::string write_mct(const mc::TransitionSystem& ts, const std::vector<std::string>& comments = {});

// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace pqe::io
