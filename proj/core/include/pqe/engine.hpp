#pragma once

// Partial quantifier elimination by D-sequent branching.
//
// Given exists X [F and G], the engine proves every X-clause of F redundant
// in every subspace, adding resolvents to F on the way.  The clauses of the
// final F without quantified variables form F*, which satisfies
//   F* and exists X [G]  ==  exists X [F and G].

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/dsequent.hpp"

namespace pqe {

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  std::uint64_t node_budget = 10'000'000;
  // Emit `r ...` / `d ...` text records.
  bool trace = false;
  // Keep a formula snapshot with every emitted D-sequent and conflict so an
  // oracle can re-check them afterwards.  Expensive; test use only.
  bool verify = false;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t resolvents = 0;
  std::uint64_t discarded = 0;
  std::uint64_t joins = 0;
  std::uint64_t atomic[3] = {0, 0, 0};  // satisfied, falsified-witness, blocked
  std::uint64_t pr_extensions = 0;      // clauses added to PR on a unit branch
  std::uint64_t max_depth = 0;
  // Scope-tagged PR entries still present after the root returned.  Always 0.
  std::uint64_t leaked_pr = 0;
};

enum class AtomicKind : std::uint8_t { join = 0, satisfied = 1, falsified = 2, blocked = 3 };

struct EmittedDSequent {
  DSequent dseq;
  AtomicKind kind;
  CnfFormula snapshot;  // F and G as they were at emission
};

struct ConflictRecord {
  Assignment q;
  Clause conflict;
  CnfFormula snapshot;
};

struct AddedResolvent {
  Clause clause;
  ClauseId parent1;
  ClauseId parent2;
  Var pivot;
};

struct PqeSolution {
  CnfFormula f_star;
  // Whether F* depends on the original F: true when some clause of F* has
  // an ancestor in F, or when F* is empty (every X-clause of F was shown
  // redundant, which is a statement about F itself).
  bool used_f = false;

  CnfFormula final_f;        // original F plus retained resolvents
  // Root D-sequents of the PR-clauses: the X-clauses of the original F and
  // resolvents with a PR parent.  Other X-resolvents descend only from
  // clauses that stay (G, non-X clauses of F) and need no proof.
  DSequentSet root;
  std::vector<AddedResolvent> resolvents;  // every resolvent ever added
  std::vector<std::string> trace;
  SolverStats stats;

  // Populated only with SolverConfig::verify.
  std::vector<EmittedDSequent> emitted;
  std::vector<ConflictRecord> conflicts;
};

// The search state of one solve: the current path q, the clause database
// (F grows by resolvents, G is fixed) and the PR-clauses with their scope
// tags.  Single-threaded; one instance per problem.  The node-level
// operations are public so they can be driven step by step.
class PqeEngine {
 public:
  struct Outcome {
    DSequentSet ds;
    ClauseId conflict = 0;  // 0 = nil
  };
  struct Blocked {
    bool blocked = false;
    Assignment support;
  };
  struct Branch {
    Var var = 0;
    bool first_value = false;
  };

  // Scope tag of PR-clauses that never expire.
  static constexpr int kPermanent = -1;

  explicit PqeEngine(const EcnfProblem& problem, SolverConfig config = {});

  PqeSolution solve();

  void assign(Var v, bool value);
  void unassign(Var v);
  Assignment q() const;
  int depth() const { return int(trail_.size()); }

  Outcome dspqe(DSequentSet ds);
  // Returns the kind-2 witness (a clause falsified by q) or 0.
  ClauseId build_atomic_dsequents(DSequentSet& ds);
  Blocked is_blocked(ClauseId c, Var v, const DSequentSet& ds) const;
  Branch pick_branch_variable(const DSequentSet& ds) const;
  // Gives PR status, scoped to the current depth, to every unsatisfied
  // non-PR X-clause containing the literal of v falsified by v = vbar_value.
  std::vector<ClauseId> extend_pr_on_unit(ClauseId c, Var v, bool vbar_value);
  // `at_node` holds the D-sequents active at q before branching on v;
  // `first_value` is the value of v in `left`.
  Outcome merge_branches(Outcome left, Outcome right, Var v, bool first_value,
                         const DSequentSet& at_node);

  const Clause& clause(ClauseId id) const;
  bool live(ClauseId id) const;
  std::optional<int> pr_tag(ClauseId id) const;
  std::vector<ClauseId> pr_clauses() const;
  CnfFormula snapshot() const;
  const SolverStats& stats() const { return stats_; }
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  struct Entry {
    Clause clause;
    bool in_f = false;
    bool original = false;
    bool from_f = false;
    bool live = true;
    std::uint64_t created_serial = 0;
  };

  Entry& entry(ClauseId id);
  const Entry& entry(ClauseId id) const;
  int lit_value(Lit l) const;  // -1 unassigned, 0 false, 1 true
  bool satisfied(const Clause& c) const;
  bool falsified(const Clause& c) const;
  std::optional<Lit> unit_literal(const Clause& c) const;
  Assignment current_values(const Clause& c) const;
  bool all_proved(const DSequentSet& ds) const;
  void emit(const DSequent& d, AtomicKind kind);
  std::optional<DSequent> satisfied_by(ClauseId id, Var v, bool value) const;
  ClauseId add_resolvent(ClauseId p1, ClauseId p2, Var v);
  void discard(ClauseId id);
  void drop_scope(int depth, DSequentSet& ds);

  EcnfProblem problem_;
  SolverConfig config_;
  int var_count_ = 0;
  std::vector<char> is_x_;
  std::vector<Var> free_vars_;
  std::vector<Entry> entries_;            // ascending id
  std::vector<std::int32_t> slot_of_;     // id -> index into entries_
  std::vector<std::vector<ClauseId>> occ_;  // literal code -> clause ids
  std::vector<signed char> val_;
  std::vector<Var> trail_;
  std::map<ClauseId, int> pr_;            // id -> scope tag
  std::vector<std::uint64_t> node_serial_;
  ClauseId next_id_ = 1;
  bool solved_ = false;

  SolverStats stats_;
  std::vector<std::string> trace_;
  std::vector<AddedResolvent> added_;
  std::vector<EmittedDSequent> emitted_;
  std::vector<ConflictRecord> conflicts_;
};

// Solves the problem; PR starts as the X-clauses of F.
// Throws ResourceLimit when the node budget is exhausted.
PqeSolution solve_pqe(const EcnfProblem& problem, const SolverConfig& config = {});

// QE as PQE with empty G.
CnfFormula solve_qe(const CnfFormula& h, const VarSet& x_vars, const SolverConfig& config = {});

// Clauses of f with no quantified variable.
CnfFormula extract_solution(const CnfFormula& final_f, const VarSet& x_vars);

}  // namespace pqe
