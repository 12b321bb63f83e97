#pragma once

// Backward reachability where each pre-image exists S' [H(S') and T(S,S')]
// is computed by taking H out of the quantifier with PQE.  Because T is
// total, exists S' [T] is 1 and the PQE answer is the whole pre-image.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/engine.hpp"

namespace pqe::mc {

struct VarOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonTotalTransition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// State vars 1..n, next-state vars n+1..2n.
struct TransitionSystem {
  int n = 0;
  Assignment init;  // cube over 1..n
  CnfFormula t;     // over 1..2n
  CnfFormula bad;   // over 1..n

  // Ranges, then totality by enumeration over 2^n states.  Throws
  // VarOutOfRange, NonTotalTransition, oracle::CapExceeded (n > cap).
  void validate(int enum_cap = 20) const;
};

CnfFormula shift_next(const CnfFormula& h, int n);
CnfFormula unshift(const CnfFormula& h, int n);

// Pre-image over 1..n of a next-state formula.  Throws ResourceLimit.
CnfFormula preimage(const CnfFormula& h_next, const CnfFormula& t, int n,
                    const SolverConfig& config = {}, std::uint64_t* nodes = nullptr);

// A state in init and frame, or nullopt.
std::optional<Assignment> check_init_intersection(const Assignment& init,
                                                  const CnfFormula& frame, int n);

// Every state of new_frame lies in some earlier frame.  Throws
// oracle::CapExceeded when n > cap.
bool fixpoint_check(const CnfFormula& new_frame, const std::vector<CnfFormula>& frames,
                    int n, int cap = 20);

enum class Verdict { safe, bug, unknown };

struct ReachResult {
  Verdict verdict = Verdict::unknown;
  int iters = 0;   // pre-images computed
  int depth = 0;   // bug only
  Assignment witness;
  std::vector<CnfFormula> frames;
  std::uint64_t pqe_nodes = 0;
};

ReachResult backward_reach(const TransitionSystem& ts, int max_iters,
                           const SolverConfig& config = {}, int enum_cap = 20);

std::string state_bits(const Assignment& s, int n);
std::string format_result(const ReachResult& r, int n);

}  // namespace pqe::mc
