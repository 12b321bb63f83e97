#pragma once

// SAT solving by repeated partial quantifier elimination.  Each round takes
// a candidate clause C out of exists X [C and G] with all variables
// quantified; the result is a constant or a clause subsuming C and decides
// whether C joins G, whether G is unsatisfiable, or whether a model exists.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/engine.hpp"

namespace pqe::sat {

struct MalformedResult : std::logic_error {
  using std::logic_error::logic_error;
};

struct IterationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ResultKind {
  kind1,  // derived from G alone: a clause implied by G subsuming C
  kind2,  // constant 1: C is redundant, C and G equisatisfiable with G
  kind3,  // constant 0: C and G unsatisfiable
};

ResultKind classify_result(const CnfFormula& f_star, bool used_f);

struct Implication {
  bool implied = false;
  Assignment counterexample;  // full model of g falsifying c when !implied
};

Implication check_implication(const CnfFormula& g, const Clause& c);

struct SatState {
  CnfFormula g;
  std::vector<Clause> history;
  int iterations = 0;
  ClauseId next_id = 1;
};

// Unit clause over the lowest occurring variable that no unit clause of G
// fixes, with the polarity occurring more often in G (ties positive).
// nullopt when every occurring variable is fixed.
std::optional<Clause> generate_candidate(const SatState& state);

struct SatConfig {
  SolverConfig pqe;
  int max_iterations = 100'000;
};

struct SatResult {
  bool sat = false;
  Assignment model;               // full model over 1..var_count when sat
  int iterations = 0;
  std::uint64_t pqe_nodes = 0;
  std::vector<std::string> log;   // one line per round
};

// Throws IterationLimit, ResourceLimit.
SatResult sat_by_pqe(const CnfFormula& g, const SatConfig& config = {});

}  // namespace pqe::sat
