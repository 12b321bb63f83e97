#include "pqe/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace pqe {

Lit Lit::from_dimacs(int lit) {
  if (lit == 0) throw std::invalid_argument("literal 0 is not a literal");
  return Lit(lit < 0 ? -lit : lit, lit < 0);
}

/*------------------------------------------------------------------------*/

Assignment::Assignment(std::initializer_list<Pair> pairs) {
  for (auto [v, b] : pairs) set(v, b);
}

void Assignment::set(Var v, bool value) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), v,
                             [](const Pair& p, Var x) { return p.first < x; });
  if (it != pairs_.end() && it->first == v) {
    if (it->second != value)
      throw std::invalid_argument("variable " + std::to_string(v) + " assigned twice");
    return;
  }
  pairs_.insert(it, {v, value});
}

void Assignment::erase(Var v) {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), v,
                             [](const Pair& p, Var x) { return p.first < x; });
  if (it != pairs_.end() && it->first == v) pairs_.erase(it);
}

std::optional<bool> Assignment::get(Var v) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), v,
                             [](const Pair& p, Var x) { return p.first < x; });
  if (it != pairs_.end() && it->first == v) return it->second;
  return std::nullopt;
}

std::optional<bool> Assignment::value(Lit l) const {
  auto b = get(l.var());
  if (!b) return std::nullopt;
  return *b == l.satisfying_value();
}

std::vector<Var> Assignment::vars() const {
  std::vector<Var> out;
  out.reserve(pairs_.size());
  for (auto& p : pairs_) out.push_back(p.first);
  return out;
}

bool Assignment::subset_of(const Assignment& other) const {
  // Both sorted: merge walk.
  auto it = other.pairs_.begin();
  for (auto& p : pairs_) {
    while (it != other.pairs_.end() && it->first < p.first) ++it;
    if (it == other.pairs_.end() || *it != p) return false;
  }
  return true;
}

/*------------------------------------------------------------------------*/

Clause::Clause(ClauseId id, std::vector<Lit> lits) : id_(id), lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var())
      throw TautologyError("clause contains both polarities of variable " +
                           std::to_string(lits_[i].var()));
}

Clause Clause::from_dimacs(ClauseId id, std::span<const int> lits) {
  std::vector<Lit> v;
  v.reserve(lits.size());
  for (int l : lits) v.push_back(Lit::from_dimacs(l));
  return Clause(id, std::move(v));
}

Clause Clause::true_marker(ClauseId id) {
  Clause c;
  c.id_ = id;
  c.status_ = Status::true_marker;
  return c;
}

std::optional<Lit> Clause::literal_on(Var v) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), Lit(v, false));
  if (it != lits_.end() && it->var() == v) return *it;
  return std::nullopt;
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

std::vector<int> Clause::to_dimacs() const {
  std::vector<int> out;
  out.reserve(lits_.size());
  for (Lit l : lits_) out.push_back(l.to_dimacs());
  return out;
}

std::string Clause::to_string() const {
  if (is_true()) return "(true)";
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < lits_.size(); ++i) os << (i ? " " : "") << lits_[i].to_dimacs();
  os << ')';
  return os.str();
}

/*------------------------------------------------------------------------*/

std::vector<Var> CnfFormula::occurring_vars() const {
  std::vector<Var> vs;
  for (auto& c : clauses)
    for (Lit l : c.lits()) vs.push_back(l.var());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool CnfFormula::same_clauses(const CnfFormula& other) const {
  if (var_count != other.var_count || clauses.size() != other.clauses.size()) return false;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (clauses[i].id() != other.clauses[i].id() || !clauses[i].same_literals(other.clauses[i]))
      return false;
  return true;
}

VarSet::VarSet(std::vector<Var> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool VarSet::contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

std::vector<Var> EcnfProblem::free_vars() const {
  std::vector<Var> out;
  auto add = [&](const CnfFormula& h) {
    for (Var v : h.occurring_vars())
      if (!x_vars.contains(v)) out.push_back(v);
  };
  add(f);
  add(g);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void EcnfProblem::validate() const {
  const int n = var_count();
  for (Var v : x_vars.vars())
    if (v < 1 || v > n) throw std::invalid_argument("quantified variable out of range");
  std::vector<ClauseId> ids;
  for (const CnfFormula* h : {&f, &g})
    for (auto& c : h->clauses) {
      ids.push_back(c.id());
      for (Lit l : c.lits())
        if (l.var() < 1 || l.var() > n) throw std::invalid_argument("literal out of range");
    }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("clause ids are not unique");
}

/*------------------------------------------------------------------------*/

Clause cofactor(const Clause& c, const Assignment& q) {
  if (c.is_true()) return c;
  std::vector<Lit> kept;
  for (Lit l : c.lits()) {
    auto val = q.value(l);
    if (!val) kept.push_back(l);
    else if (*val) return Clause::true_marker(c.id());
  }
  return Clause(c.id(), std::move(kept));
}

CnfFormula cofactor(const CnfFormula& h, const Assignment& q) {
  CnfFormula out;
  out.var_count = h.var_count;
  out.clauses.reserve(h.clauses.size());
  for (auto& c : h.clauses) out.clauses.push_back(cofactor(c, q));
  return out;
}

Clause resolve(const Clause& c1, const Clause& c2, Var v, ClauseId fresh_id) {
  auto l1 = c1.literal_on(v), l2 = c2.literal_on(v);
  if (!l1 || !l2 || *l1 != ~*l2)
    throw std::invalid_argument("clauses are not resolvable on " + std::to_string(v));
  std::vector<Lit> lits;
  lits.reserve(c1.size() + c2.size());
  for (Lit l : c1.lits())
    if (l.var() != v) lits.push_back(l);
  for (Lit l : c2.lits())
    if (l.var() != v) lits.push_back(l);
  return Clause(fresh_id, std::move(lits));
}

bool is_x_clause(const Clause& c, const VarSet& x_vars) {
  for (Lit l : c.lits())
    if (x_vars.contains(l.var())) return true;
  return false;
}

bool subsumes(const Clause& c1, const Clause& c2) {
  if (c2.is_true()) return true;
  if (c1.is_true()) return false;
  return std::includes(c2.lits().begin(), c2.lits().end(), c1.lits().begin(), c1.lits().end());
}

bool is_satisfied(const Clause& c, const Assignment& q) {
  if (c.is_true()) return true;
  for (Lit l : c.lits())
    if (q.value(l) == true) return true;
  return false;
}

bool is_falsified(const Clause& c, const Assignment& q) {
  if (c.is_true()) return false;
  for (Lit l : c.lits())
    if (q.value(l) != false) return false;
  return true;
}

bool evaluate(const CnfFormula& h, const Assignment& full) {
  bool result = true;
  for (auto& c : h.clauses) {
    if (c.is_true()) continue;
    bool sat = false;
    for (Lit l : c.lits()) {
      auto val = full.value(l);
      if (!val) throw IncompleteAssignment("variable " + std::to_string(l.var()) + " unassigned");
      sat = sat || *val;
    }
    result = result && sat;
  }
  return result;
}

}  // namespace pqe
