#pragma once

// Exhaustive semantic ground truth for the solvers.  Everything here is
// deliberately naive: enumeration and a textbook DPLL, refusing inputs
// beyond the configured caps instead of degrading.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/dsequent.hpp"

namespace pqe::oracle {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  int sat_vars = 24;
  int table_vars = 20;
};

// rows[i] is the value for the assignment giving y_vars[k] the k-th bit of i.
struct TruthTable {
  std::vector<Var> y_vars;
  std::vector<bool> rows;

  Assignment assignment(std::size_t row) const;
  bool operator==(const TruthTable&) const = default;
};

// First model when counting through assignments with var 1 as the lowest
// bit, or nullopt when unsatisfiable.
std::optional<Assignment> brute_sat(const CnfFormula& h, const Caps& caps = {});

// Row y is 1 iff h restricted to y is satisfiable.  Default y_vars: the
// variables of h outside x.
TruthTable exists_table(const CnfFormula& h, const VarSet& x, const Caps& caps = {});
TruthTable exists_table(const CnfFormula& h, const std::vector<Var>& y_vars,
                        const Caps& caps = {});

bool check_pqe_solution(const EcnfProblem& problem, const CnfFormula& f_star,
                        const Caps& caps = {});

// exists X [h|s] == exists X [(h minus R)|s] for d = (s -> R).
bool check_dsequent(const CnfFormula& h, const VarSet& x, const DSequent& d,
                    const Caps& caps = {});

// DPLL with unit propagation; branches on the lowest unassigned variable,
// value 0 first.  Returns a full model over 1..var_count.
std::optional<Assignment> reference_dpll(const CnfFormula& h);

// Explicit-state view of a transition relation over states 1..n and next
// states n+1..2n.  A state is an integer whose bit k-1 is variable k.
struct ExplicitSystem {
  int n = 0;
  std::vector<std::vector<std::uint32_t>> succ;
};

ExplicitSystem enumerate_transitions(const CnfFormula& t, int n, const Caps& caps = {});

// Membership bitmap over the 2^n states for a formula over 1..n.
std::vector<bool> state_set(const CnfFormula& h, int n, const Caps& caps = {});
std::vector<bool> cube_set(const Assignment& cube, int n, const Caps& caps = {});
std::vector<bool> explicit_preimage(const ExplicitSystem& sys, const std::vector<bool>& target);

// Shortest path length from an init state to a bad state, nullopt when no
// bad state is reachable.
std::optional<int> bfs_bug_depth(const ExplicitSystem& sys, const std::vector<bool>& init,
                                 const std::vector<bool>& bad);

// The backward frame iteration replayed on explicit sets: frame k+1 is the
// pre-image of frame k; stops at the first frame meeting init (bug) or
// contained in the union of the earlier ones (safe).
struct ExplicitVerdict {
  enum Kind { safe, bug, unknown } kind = unknown;
  int iters = 0;
  int depth = 0;
};
ExplicitVerdict explicit_backward(const ExplicitSystem& sys, const std::vector<bool>& init,
                                  const std::vector<bool>& bad, int max_iters);

}  // namespace pqe::oracle
