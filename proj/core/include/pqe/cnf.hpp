#pragma once

// Propositional and existentially quantified CNF data model.
//
// Literals are packed as 2*var+sign internally and use the signed DIMACS
// convention at the boundary.  Clause literal sets are kept sorted by
// variable so subsumption and output are linear and deterministic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pqe {

using Var = int;
using ClauseId = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negative) : code_(2u * unsigned(v) + (negative ? 1u : 0u)) {}

  static Lit from_dimacs(int lit);

  constexpr Var var() const { return Var(code_ >> 1); }
  constexpr bool negative() const { return code_ & 1u; }
  // The value `var` must take to satisfy this literal.
  constexpr bool satisfying_value() const { return !negative(); }
  constexpr int to_dimacs() const { return negative() ? -var() : var(); }
  constexpr unsigned code() const { return code_; }

  constexpr Lit operator~() const { Lit l; l.code_ = code_ ^ 1u; return l; }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  unsigned code_ = 0;
};

struct TautologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompleteAssignment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partial map var -> bit, stored sorted by variable.
class Assignment {
 public:
  using Pair = std::pair<Var, bool>;

  Assignment() = default;
  Assignment(std::initializer_list<Pair> pairs);

  // Throws std::invalid_argument if var is already bound to the other value.
  void set(Var v, bool value);
  void erase(Var v);
  std::optional<bool> get(Var v) const;
  bool contains(Var v) const { return get(v).has_value(); }

  // Value of a literal under this assignment, nullopt when unassigned.
  std::optional<bool> value(Lit l) const;

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  std::vector<Var> vars() const;

  // True iff every pair of *this appears in other.
  bool subset_of(const Assignment& other) const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<Pair> pairs_;
};

class Clause {
 public:
  enum class Status : std::uint8_t { normal, true_marker };

  Clause() = default;
  // Sorts, removes repeated literals, rejects tautologies.
  Clause(ClauseId id, std::vector<Lit> lits);
  static Clause from_dimacs(ClauseId id, std::span<const int> lits);
  static Clause true_marker(ClauseId id);

  ClauseId id() const { return id_; }
  const std::vector<Lit>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool is_true() const { return status_ == Status::true_marker; }
  // The empty (falsified) clause; never a true-marker.
  bool is_empty() const { return !is_true() && lits_.empty(); }

  std::optional<Lit> literal_on(Var v) const;
  bool contains(Lit l) const;
  std::vector<int> to_dimacs() const;
  std::string to_string() const;

  // Structural equality ignores ids.
  bool same_literals(const Clause& other) const {
    return status_ == other.status_ && lits_ == other.lits_;
  }

 private:
  ClauseId id_ = 0;
  std::vector<Lit> lits_;
  Status status_ = Status::normal;
};

struct CnfFormula {
  int var_count = 0;
  std::vector<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }
  // Variables occurring in some clause, sorted.
  std::vector<Var> occurring_vars() const;
  bool same_clauses(const CnfFormula& other) const;
};

// Sorted set of variables with O(log n) membership.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::vector<Var> vars);
  VarSet(std::initializer_list<Var> vars) : VarSet(std::vector<Var>(vars)) {}

  bool contains(Var v) const;
  const std::vector<Var>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  bool operator==(const VarSet&) const = default;

 private:
  std::vector<Var> vars_;
};

// exists X [F and G].  F is the part to take out of the quantifier scope.
struct EcnfProblem {
  VarSet x_vars;
  CnfFormula f;
  CnfFormula g;

  int var_count() const { return std::max(f.var_count, g.var_count); }
  // Y: variables of F and G that are not quantified.
  std::vector<Var> free_vars() const;
  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

Clause cofactor(const Clause& c, const Assignment& q);
CnfFormula cofactor(const CnfFormula& h, const Assignment& q);

// Resolvent on v.  Throws TautologyError when the result would contain
// both polarities of another variable.
Clause resolve(const Clause& c1, const Clause& c2, Var v, ClauseId fresh_id);

bool is_x_clause(const Clause& c, const VarSet& x_vars);
bool subsumes(const Clause& c1, const Clause& c2);

bool is_satisfied(const Clause& c, const Assignment& q);
bool is_falsified(const Clause& c, const Assignment& q);

// Throws IncompleteAssignment if a variable of h is unassigned.
bool evaluate(const CnfFormula& h, const Assignment& full);

}  // namespace pqe
