#include "pqe/engine.hpp"

#include <algorithm>
#include <sstream>

namespace pqe {

namespace {

std::string format_dsequent(const DSequent& d) {
  std::ostringstream os;
  os << 'd';
  for (auto [v, b] : d.cond.pairs()) os << ' ' << (b ? v : -v);
  os << " 0";
  for (ClauseId id : d.clause_ids) os << ' ' << id;
  os << " 0";
  return os.str();
}

std::string format_resolvent(const Clause& c, ClauseId p1, ClauseId p2) {
  std::ostringstream os;
  os << 'r' << ' ' << c.id();
  for (int l : c.to_dimacs()) os << ' ' << l;
  os << " 0 " << p1 << ' ' << p2;
  return os.str();
}

// Tag that keeps PR status longer: permanent beats any depth, shallower
// beats deeper.
int longer_lived(int a, int b) { return std::min(a, b); }

}  // namespace

PqeEngine::PqeEngine(const EcnfProblem& problem, SolverConfig config)
    : problem_(problem), config_(config) {
  problem_.validate();
  var_count_ = problem_.var_count();
  is_x_.assign(var_count_ + 1, 0);
  for (Var v : problem_.x_vars.vars()) is_x_[v] = 1;
  free_vars_ = problem_.free_vars();
  val_.assign(var_count_ + 1, -1);
  occ_.resize(2 * (var_count_ + 1));

  std::vector<std::pair<const Clause*, bool>> input;
  for (auto& c : problem_.f.clauses) input.push_back({&c, true});
  for (auto& c : problem_.g.clauses) input.push_back({&c, false});
  std::sort(input.begin(), input.end(),
            [](auto& a, auto& b) { return a.first->id() < b.first->id(); });
  for (auto [c, in_f] : input) {
    if (c->id() == 0) throw std::invalid_argument("clause id 0 is reserved");
    if (c->is_true()) continue;
    Entry e;
    e.clause = *c;
    e.in_f = in_f;
    e.original = true;
    e.from_f = in_f;
    if (slot_of_.size() <= c->id()) slot_of_.resize(c->id() + 1, -1);
    slot_of_[c->id()] = std::int32_t(entries_.size());
    for (Lit l : c->lits()) occ_[l.code()].push_back(c->id());
    entries_.push_back(std::move(e));
    next_id_ = std::max<ClauseId>(next_id_, c->id() + 1);
    if (in_f && is_x_clause(*c, problem_.x_vars)) pr_.emplace(c->id(), kPermanent);
  }
}

PqeEngine::Entry& PqeEngine::entry(ClauseId id) {
  return entries_.at(std::size_t(slot_of_.at(id)));
}

const PqeEngine::Entry& PqeEngine::entry(ClauseId id) const {
  if (id >= slot_of_.size() || slot_of_[id] < 0)
    throw std::out_of_range("unknown clause id " + std::to_string(id));
  return entries_[std::size_t(slot_of_[id])];
}

const Clause& PqeEngine::clause(ClauseId id) const { return entry(id).clause; }

bool PqeEngine::live(ClauseId id) const {
  return id < slot_of_.size() && slot_of_[id] >= 0 && entry(id).live;
}

std::optional<int> PqeEngine::pr_tag(ClauseId id) const {
  auto it = pr_.find(id);
  if (it == pr_.end()) return std::nullopt;
  return it->second;
}

std::vector<ClauseId> PqeEngine::pr_clauses() const {
  std::vector<ClauseId> out;
  for (auto& [id, tag] : pr_) out.push_back(id);
  return out;
}

CnfFormula PqeEngine::snapshot() const {
  CnfFormula h;
  h.var_count = var_count_;
  for (auto& e : entries_)
    if (e.live) h.clauses.push_back(e.clause);
  return h;
}

void PqeEngine::assign(Var v, bool value) {
  if (v < 1 || v > var_count_ || val_[v] >= 0)
    throw std::invalid_argument("cannot assign variable " + std::to_string(v));
  val_[v] = value ? 1 : 0;
  trail_.push_back(v);
}

void PqeEngine::unassign(Var v) {
  auto it = std::find(trail_.begin(), trail_.end(), v);
  if (it == trail_.end()) throw std::invalid_argument("variable not assigned");
  trail_.erase(it);
  val_[v] = -1;
}

Assignment PqeEngine::q() const {
  Assignment a;
  for (Var v : trail_) a.set(v, val_[v] == 1);
  return a;
}

int PqeEngine::lit_value(Lit l) const {
  const int b = val_[l.var()];
  if (b < 0) return -1;
  return (b == 1) == l.satisfying_value() ? 1 : 0;
}

bool PqeEngine::satisfied(const Clause& c) const {
  for (Lit l : c.lits())
    if (lit_value(l) == 1) return true;
  return false;
}

bool PqeEngine::falsified(const Clause& c) const {
  for (Lit l : c.lits())
    if (lit_value(l) != 0) return false;
  return true;
}

std::optional<Lit> PqeEngine::unit_literal(const Clause& c) const {
  std::optional<Lit> free;
  for (Lit l : c.lits()) {
    const int val = lit_value(l);
    if (val == 1) return std::nullopt;
    if (val < 0) {
      if (free) return std::nullopt;
      free = l;
    }
  }
  return free;
}

Assignment PqeEngine::current_values(const Clause& c) const {
  Assignment a;
  for (Lit l : c.lits())
    if (val_[l.var()] >= 0) a.set(l.var(), val_[l.var()] == 1);
  return a;
}

bool PqeEngine::all_proved(const DSequentSet& ds) const {
  for (auto& [id, tag] : pr_)
    if (!ds.proved(id)) return false;
  return true;
}

void PqeEngine::emit(const DSequent& d, AtomicKind kind) {
  if (kind == AtomicKind::join) ++stats_.joins;
  else ++stats_.atomic[int(kind) - 1];
  if (config_.trace) trace_.push_back(format_dsequent(d));
  if (config_.verify) emitted_.push_back({d, kind, snapshot()});
}

std::optional<DSequent> PqeEngine::satisfied_by(ClauseId id, Var v, bool value) const {
  auto l = clause(id).literal_on(v);
  if (!l || l->satisfying_value() != value) return std::nullopt;
  return DSequent(Assignment{{v, value}}, {id});
}

/*------------------------------------------------------------------------*/

// Atomic D-sequents.  Clauses already proved at q are treated as removed:
// they are never witnesses and count as redundant partners when checking
// whether a clause is blocked.

ClauseId PqeEngine::build_atomic_dsequents(DSequentSet& ds) {
  ClauseId witness = 0;
  for (auto& e : entries_)
    if (e.live && !ds.proved(e.clause.id()) && falsified(e.clause)) {
      witness = e.clause.id();
      break;
    }

  auto kind1 = [&](ClauseId id) {
    for (Lit l : clause(id).lits())
      if (lit_value(l) == 1) {
        DSequent d(Assignment{{l.var(), l.satisfying_value()}}, {id});
        emit(d, AtomicKind::satisfied);
        ds.put(id, std::move(d));
        return true;
      }
    return false;
  };

  if (witness) {
    const Assignment cond = current_values(clause(witness));
    for (auto& [id, tag] : pr_) {
      if (id == witness || ds.proved(id) || kind1(id)) continue;
      DSequent d(cond, {id});
      emit(d, AtomicKind::falsified);
      ds.put(id, std::move(d));
    }
    return witness;
  }

  for (auto& [id, tag] : pr_)
    if (!ds.proved(id)) kind1(id);

  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [id, tag] : pr_) {
      if (ds.proved(id)) continue;
      const Clause& c = clause(id);
      for (Lit l : c.lits()) {
        if (!is_x_[l.var()] || val_[l.var()] >= 0) continue;
        Blocked b = is_blocked(id, l.var(), ds);
        if (!b.blocked) continue;
        Assignment cond = std::move(b.support);
        const Assignment own = current_values(c);
        for (auto [v, val] : own.pairs()) cond.set(v, val);
        DSequent d(std::move(cond), {id});
        emit(d, AtomicKind::blocked);
        ds.put(id, std::move(d));
        changed = true;
        break;
      }
    }
  }
  return 0;
}

PqeEngine::Blocked PqeEngine::is_blocked(ClauseId id, Var v, const DSequentSet& ds) const {
  const Clause& c = clause(id);
  auto lit = c.literal_on(v);
  if (!lit) throw std::invalid_argument("clause does not contain the variable");
  Blocked out;
  for (ClauseId pid : occ_[(~*lit).code()]) {
    if (!live(pid)) continue;
    const Clause& partner = clause(pid);
    // (a) satisfied by q
    bool done = false;
    for (Lit l : partner.lits())
      if (lit_value(l) == 1) {
        out.support.set(l.var(), l.satisfying_value());
        done = true;
        break;
      }
    if (done) continue;
    // (b) tautological resolvent
    for (Lit l : partner.lits())
      if (l.var() != v && c.contains(~l)) {
        done = true;
        break;
      }
    if (done) continue;
    // (c) already redundant
    if (const DSequent* d = ds.find(pid)) {
      for (auto [u, b] : d->cond.pairs()) out.support.set(u, b);
      continue;
    }
    return Blocked{};
  }
  out.blocked = true;
  return out;
}

PqeEngine::Branch PqeEngine::pick_branch_variable(const DSequentSet& ds) const {
  for (Var v : free_vars_)
    if (val_[v] < 0) return {v, false};
  for (auto& [id, tag] : pr_) {
    if (ds.proved(id)) continue;
    if (auto l = unit_literal(clause(id))) return {l->var(), !l->satisfying_value()};
  }
  Var best = 0;
  for (auto& [id, tag] : pr_) {
    if (ds.proved(id)) continue;
    for (Lit l : clause(id).lits())
      if (val_[l.var()] < 0 && (best == 0 || l.var() < best)) best = l.var();
  }
  if (best == 0) throw std::logic_error("no branching variable for unproved PR-clauses");
  return {best, false};
}

std::vector<ClauseId> PqeEngine::extend_pr_on_unit(ClauseId c, Var v, bool vbar_value) {
  auto unit = unit_literal(clause(c));
  if (!is_x_.at(v) || !unit || unit->var() != v || unit->satisfying_value() != vbar_value)
    throw std::invalid_argument("clause is not unit on the variable or not satisfied by the branch");
  const Lit falsified_lit(v, /*negative=*/vbar_value);
  std::vector<ClauseId> added;
  for (ClauseId id : occ_[falsified_lit.code()]) {
    if (!live(id) || pr_.count(id) || satisfied(clause(id))) continue;
    pr_.emplace(id, depth());
    added.push_back(id);
  }
  std::sort(added.begin(), added.end());
  stats_.pr_extensions += added.size();
  return added;
}

/*------------------------------------------------------------------------*/

ClauseId PqeEngine::add_resolvent(ClauseId p1, ClauseId p2, Var v) {
  Clause r;
  try {
    r = resolve(clause(p1), clause(p2), v, next_id_);
  } catch (const TautologyError&) {
    throw std::logic_error("conflict clauses produced a tautological resolvent");
  }

  bool has_tag = false;
  int tag = 0;
  for (ClauseId p : {p1, p2})
    if (auto t = pr_tag(p)) {
      tag = has_tag ? longer_lived(tag, *t) : *t;
      has_tag = true;
    }
  if (!is_x_clause(r, problem_.x_vars)) has_tag = false;

  ClauseId id = 0;
  for (auto& e : entries_)
    if (e.live && e.clause.same_literals(r)) {
      id = e.clause.id();
      break;
    }

  if (!id) {
    id = next_id_++;
    Entry e;
    e.clause = r;
    e.in_f = true;
    e.from_f = entry(p1).from_f || entry(p2).from_f;
    e.created_serial = node_serial_.empty() ? 0 : node_serial_.back();
    if (slot_of_.size() <= id) slot_of_.resize(id + 1, -1);
    slot_of_[id] = std::int32_t(entries_.size());
    for (Lit l : r.lits()) occ_[l.code()].push_back(id);
    entries_.push_back(std::move(e));
    ++stats_.resolvents;
    added_.push_back({r, p1, p2, v});
    if (config_.trace) trace_.push_back(format_resolvent(r, p1, p2));
  }
  if (has_tag) {
    auto [it, fresh] = pr_.emplace(id, tag);
    if (!fresh) it->second = longer_lived(it->second, tag);
  }

  // Intermediate resolvents created below this node are subsumed by the new
  // clause in subspace q (which falsifies it), so they are dropped.
  if (!node_serial_.empty())
    for (ClauseId p : {p1, p2}) {
      const Entry& e = entry(p);
      if (p != id && e.live && !e.original && e.created_serial > node_serial_.back()) discard(p);
    }
  return id;
}

void PqeEngine::discard(ClauseId id) {
  entry(id).live = false;
  pr_.erase(id);
  ++stats_.discarded;
  if (config_.trace) trace_.push_back("c discard " + std::to_string(id));
}

void PqeEngine::drop_scope(int d, DSequentSet& ds) {
  for (auto it = pr_.begin(); it != pr_.end();) {
    if (it->second != kPermanent && it->second >= d) {
      ds.erase(it->first);
      it = pr_.erase(it);
    } else {
      ++it;
    }
  }
}

PqeEngine::Outcome PqeEngine::merge_branches(Outcome left, Outcome right, Var v,
                                             bool first_value, const DSequentSet& at_node) {
  const bool left_has_v = left.conflict && clause(left.conflict).literal_on(v);
  const bool right_has_v = right.conflict && clause(right.conflict).literal_on(v);

  if (left.conflict && !left_has_v) return {at_node, left.conflict};
  if (right.conflict && !right_has_v) return {at_node, right.conflict};
  if (left.conflict && right.conflict)
    return {at_node, add_resolvent(left.conflict, right.conflict, v)};

  DSequentSet out = at_node;
  for (auto& [id, tag] : pr_) {
    if (out.proved(id)) continue;
    std::optional<DSequent> dl, dr;
    if (auto* d = left.ds.find(id)) dl = *d;
    else if ((dl = satisfied_by(id, v, first_value))) emit(*dl, AtomicKind::satisfied);
    if (!dl) continue;
    if (auto* d = right.ds.find(id)) dr = *d;
    else if ((dr = satisfied_by(id, v, !first_value))) emit(*dr, AtomicKind::satisfied);
    if (!dr) continue;

    if (dl->cond.contains(v) && dr->cond.contains(v)) {
      DSequent joined = join(*dl, *dr, v);
      emit(joined, AtomicKind::join);
      out.put(id, std::move(joined));
    } else {
      out.put(id, dl->cond.contains(v) ? std::move(*dr) : std::move(*dl));
    }
  }
  return {std::move(out), 0};
}

/*------------------------------------------------------------------------*/

PqeEngine::Outcome PqeEngine::dspqe(DSequentSet ds) {
  if (++stats_.nodes > config_.node_budget)
    throw ResourceLimit("node budget of " + std::to_string(config_.node_budget) + " exhausted");
  stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, trail_.size());
  const int d = depth();
  node_serial_.push_back(stats_.nodes);

  for (;;) {
    const ClauseId witness = build_atomic_dsequents(ds);
    if (witness || all_proved(ds)) {
      if (witness && config_.verify) conflicts_.push_back({q(), clause(witness), snapshot()});
      drop_scope(d, ds);
      node_serial_.pop_back();
      return {std::move(ds), witness};
    }

    const auto [v, b] = pick_branch_variable(ds);
    assign(v, b);
    Outcome left = dspqe(ds);
    unassign(v);
    if (left.conflict && !clause(left.conflict).literal_on(v)) continue;

    if (is_x_[v])
      for (auto& [id, tag] : pr_) {
        if (ds.proved(id)) continue;
        auto l = unit_literal(clause(id));
        if (l && l->var() == v && l->satisfying_value() != b) {
          extend_pr_on_unit(id, v, !b);
          break;
        }
      }

    assign(v, !b);
    Outcome right = dspqe(ds);
    unassign(v);
    ds = merge_branches(std::move(left), std::move(right), v, b, ds).ds;
  }
}

PqeSolution PqeEngine::solve() {
  if (solved_) throw std::logic_error("engine already used");
  solved_ = true;
  Outcome root = dspqe(DSequentSet{});

  for (auto& [id, tag] : pr_)
    if (tag != kPermanent) ++stats_.leaked_pr;

  PqeSolution sol;
  sol.final_f.var_count = var_count_;
  for (auto& e : entries_)
    if (e.live && e.in_f) sol.final_f.clauses.push_back(e.clause);
  sol.f_star = extract_solution(sol.final_f, problem_.x_vars);
  sol.used_f = sol.f_star.empty();
  for (auto& c : sol.f_star.clauses) sol.used_f = sol.used_f || entry(c.id()).from_f;
  for (auto& [id, d] : root.ds)
    if (live(id)) sol.root.put(id, d);
  sol.resolvents = std::move(added_);
  sol.trace = std::move(trace_);
  sol.stats = stats_;
  sol.emitted = std::move(emitted_);
  sol.conflicts = std::move(conflicts_);
  return sol;
}

PqeSolution solve_pqe(const EcnfProblem& problem, const SolverConfig& config) {
  return PqeEngine(problem, config).solve();
}

CnfFormula solve_qe(const CnfFormula& h, const VarSet& x_vars, const SolverConfig& config) {
  EcnfProblem p;
  p.x_vars = x_vars;
  p.f = h;
  p.g.var_count = h.var_count;
  return solve_pqe(p, config).f_star;
}

CnfFormula extract_solution(const CnfFormula& final_f, const VarSet& x_vars) {
  CnfFormula out;
  out.var_count = final_f.var_count;
  for (auto& c : final_f.clauses)
    if (!c.is_true() && !is_x_clause(c, x_vars)) out.clauses.push_back(c);
  return out;
}

}  // namespace pqe
