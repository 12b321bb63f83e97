#include "pqe/dsequent.hpp"

#include <algorithm>

namespace pqe {

DSequent::DSequent(Assignment c, std::vector<ClauseId> ids)
    : cond(std::move(c)), clause_ids(std::move(ids)) {
  std::sort(clause_ids.begin(), clause_ids.end());
  clause_ids.erase(std::unique(clause_ids.begin(), clause_ids.end()), clause_ids.end());
  if (clause_ids.empty()) throw std::invalid_argument("D-sequent needs at least one clause");
}

bool compatible(const Assignment& s1, const Assignment& s2) {
  for (auto [v, b] : s1.pairs()) {
    auto o = s2.get(v);
    if (o && *o != b) return false;
  }
  return true;
}

bool are_resolvable(const Assignment& s1, const Assignment& s2, Var v) {
  auto a = s1.get(v), b = s2.get(v);
  if (!a || !b || *a == *b) return false;
  for (auto [u, val] : s1.pairs()) {
    if (u == v) continue;
    auto o = s2.get(u);
    if (o && *o != val) return false;
  }
  return true;
}

Assignment resolve_assignments(const Assignment& s1, const Assignment& s2, Var v) {
  if (!are_resolvable(s1, s2, v))
    throw NotResolvable("assignments are not resolvable on " + std::to_string(v));
  Assignment out;
  for (auto [u, b] : s1.pairs())
    if (u != v) out.set(u, b);
  for (auto [u, b] : s2.pairs())
    if (u != v) out.set(u, b);
  return out;
}

DSequent join(const DSequent& d1, const DSequent& d2, Var v) {
  if (d1.clause_ids != d2.clause_ids)
    throw ClauseSetMismatch("joined D-sequents must share their clause set");
  return DSequent(resolve_assignments(d1.cond, d2.cond, v), d1.clause_ids);
}

const DSequent* DSequentSet::find(ClauseId id) const {
  auto it = slots_.find(id);
  return it == slots_.end() ? nullptr : &it->second;
}

DSequent DSequentSet::compose() const {
  Assignment cond;
  std::vector<ClauseId> ids;
  for (auto& [id, d] : slots_) {
    for (auto [v, b] : d.cond.pairs()) cond.set(v, b);
    ids.push_back(id);
  }
  return DSequent(std::move(cond), std::move(ids));
}

}  // namespace pqe
