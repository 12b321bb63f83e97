#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pqe/cnf.hpp"

namespace pqe {

struct NotResolvable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ClauseSetMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dependency sequent `cond -> clause_ids`: the clauses are redundant in the
/// quantified formula restricted to the subspace `cond`.  Clauses are named
/// by id, so a D-sequent survives resolvents being added to the formula.
struct DSequent {
  Assignment cond;
  std::vector<ClauseId> clause_ids;  // sorted, nonempty

  DSequent() = default;
  DSequent(Assignment c, std::vector<ClauseId> ids);

  bool operator==(const DSequent&) const = default;
};

bool compatible(const Assignment& s1, const Assignment& s2);

// v takes opposite values in s1 and s2 and every other shared variable agrees.
bool are_resolvable(const Assignment& s1, const Assignment& s2, Var v);

// s1 union s2 without v.  Throws NotResolvable.
Assignment resolve_assignments(const Assignment& s1, const Assignment& s2, Var v);

DSequent join(const DSequent& d1, const DSequent& d2, Var v);

inline bool is_active(const DSequent& d, const Assignment& q) { return d.cond.subset_of(q); }

/// At most one active D-sequent per clause id.
class DSequentSet {
 public:
  const DSequent* find(ClauseId id) const;
  bool proved(ClauseId id) const { return slots_.count(id) != 0; }
  void put(ClauseId id, DSequent d) { slots_.insert_or_assign(id, std::move(d)); }
  void erase(ClauseId id) { slots_.erase(id); }
  std::size_t size() const { return slots_.size(); }

  auto begin() const { return slots_.begin(); }
  auto end() const { return slots_.end(); }

  // All clause ids with the union of conditionals.
  DSequent compose() const;

 private:
  std::map<ClauseId, DSequent> slots_;
};

}  // namespace pqe
