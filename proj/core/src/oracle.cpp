#include "pqe/oracle.hpp"

#include <algorithm>

namespace pqe::oracle {

namespace {

int max_var(const CnfFormula& h) {
  int n = h.var_count;
  for (auto& c : h.clauses)
    for (Lit l : c.lits()) n = std::max(n, l.var());
  return n;
}

class Dpll {
 public:
  explicit Dpll(const CnfFormula& h) : n_(max_var(h)), val_(n_ + 1, -1) {
    for (auto& c : h.clauses)
      if (!c.is_true()) clauses_.push_back(&c);
  }

  bool solve() {
    std::vector<Var> trail;
    if (!propagate(trail)) return false;
    Var v = 1;
    while (v <= n_ && val_[v] >= 0) ++v;
    if (v > n_) return true;
    for (int b : {0, 1}) {
      val_[v] = b;
      if (solve()) return true;
      val_[v] = -1;
    }
    for (Var u : trail) val_[u] = -1;
    return false;
  }

  Assignment model() const {
    Assignment a;
    for (Var v = 1; v <= n_; ++v) a.set(v, val_[v] == 1);
    return a;
  }

 private:
  bool propagate(std::vector<Var>& trail) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const Clause* c : clauses_) {
        int unassigned = 0;
        Lit last;
        bool sat = false;
        for (Lit l : c->lits()) {
          const int b = val_[l.var()];
          if (b < 0) {
            ++unassigned;
            last = l;
          } else if ((b == 1) == l.satisfying_value()) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) {
          for (Var u : trail) val_[u] = -1;
          trail.clear();
          return false;
        }
        if (unassigned == 1) {
          val_[last.var()] = last.satisfying_value() ? 1 : 0;
          trail.push_back(last.var());
          changed = true;
        }
      }
    }
    return true;
  }

  int n_;
  std::vector<signed char> val_;
  std::vector<const Clause*> clauses_;
};

}  // namespace

Assignment TruthTable::assignment(std::size_t row) const {
  Assignment a;
  for (std::size_t k = 0; k < y_vars.size(); ++k) a.set(y_vars[k], (row >> k) & 1u);
  return a;
}

std::optional<Assignment> brute_sat(const CnfFormula& h, const Caps& caps) {
  const int n = max_var(h);
  if (n > caps.sat_vars) throw CapExceeded("brute_sat: too many variables");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool all = true;
    for (auto& c : h.clauses) {
      if (c.is_true()) continue;
      bool sat = false;
      for (Lit l : c.lits())
        if (bool((bits >> (l.var() - 1)) & 1u) == l.satisfying_value()) {
          sat = true;
          break;
        }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) {
      Assignment a;
      for (Var v = 1; v <= n; ++v) a.set(v, (bits >> (v - 1)) & 1u);
      return a;
    }
  }
  return std::nullopt;
}

TruthTable exists_table(const CnfFormula& h, const VarSet& x, const Caps& caps) {
  std::vector<Var> ys;
  for (Var v : h.occurring_vars())
    if (!x.contains(v)) ys.push_back(v);
  return exists_table(h, ys, caps);
}

TruthTable exists_table(const CnfFormula& h, const std::vector<Var>& y_vars, const Caps& caps) {
  if (int(y_vars.size()) > caps.table_vars) throw CapExceeded("exists_table: too many free variables");
  TruthTable t;
  t.y_vars = y_vars;
  const std::size_t rows = std::size_t{1} << y_vars.size();
  t.rows.resize(rows);
  for (std::size_t r = 0; r < rows; ++r)
    t.rows[r] = reference_dpll(cofactor(h, t.assignment(r))).has_value();
  return t;
}

bool check_pqe_solution(const EcnfProblem& problem, const CnfFormula& f_star, const Caps& caps) {
  const std::vector<Var> ys = problem.free_vars();
  for (auto& c : f_star.clauses)
    if (is_x_clause(c, problem.x_vars)) return false;
  CnfFormula fg = problem.f;
  fg.var_count = problem.var_count();
  fg.clauses.insert(fg.clauses.end(), problem.g.clauses.begin(), problem.g.clauses.end());
  const TruthTable whole = exists_table(fg, ys, caps);
  const TruthTable side = exists_table(problem.g, ys, caps);
  for (std::size_t r = 0; r < whole.rows.size(); ++r) {
    const Assignment y = whole.assignment(r);
    bool fs = true;
    for (auto& c : f_star.clauses) fs = fs && is_satisfied(c, y);
    if ((fs && side.rows[r]) != whole.rows[r]) return false;
  }
  return true;
}

bool check_dsequent(const CnfFormula& h, const VarSet& x, const DSequent& d, const Caps& caps) {
  CnfFormula without;
  without.var_count = h.var_count;
  for (auto& c : h.clauses)
    if (!std::binary_search(d.clause_ids.begin(), d.clause_ids.end(), c.id()))
      without.clauses.push_back(c);
  std::vector<Var> ys;
  for (Var v : h.occurring_vars())
    if (!x.contains(v) && !d.cond.contains(v)) ys.push_back(v);
  return exists_table(cofactor(h, d.cond), ys, caps) ==
         exists_table(cofactor(without, d.cond), ys, caps);
}

std::optional<Assignment> reference_dpll(const CnfFormula& h) {
  Dpll solver(h);
  if (!solver.solve()) return std::nullopt;
  return solver.model();
}

}  // namespace pqe::oracle

namespace pqe::oracle {

namespace {

void check_state_cap(int n, const Caps& caps) {
  if (n > caps.table_vars)
    throw CapExceeded("2^" + std::to_string(n) + " states exceed the enumeration cap");
}

Assignment state_assignment(std::uint64_t bits, int n, int offset) {
  Assignment a;
  for (Var v = 1; v <= n; ++v) a.set(v + offset, (bits >> (v - 1)) & 1u);
  return a;
}

}  // namespace

ExplicitSystem enumerate_transitions(const CnfFormula& t, int n, const Caps& caps) {
  check_state_cap(n, caps);
  ExplicitSystem sys;
  sys.n = n;
  const std::uint64_t states = std::uint64_t{1} << n;
  sys.succ.resize(states);
  for (std::uint64_t s = 0; s < states; ++s) {
    CnfFormula ts = cofactor(t, state_assignment(s, n, 0));
    for (std::uint64_t s2 = 0; s2 < states; ++s2)
      if (evaluate(cofactor(ts, state_assignment(s2, n, n)), Assignment{}))
        sys.succ[s].push_back(std::uint32_t(s2));
  }
  return sys;
}

std::vector<bool> state_set(const CnfFormula& h, int n, const Caps& caps) {
  check_state_cap(n, caps);
  std::vector<bool> out(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < out.size(); ++s) out[s] = evaluate(h, state_assignment(s, n, 0));
  return out;
}

std::vector<bool> cube_set(const Assignment& cube, int n, const Caps& caps) {
  check_state_cap(n, caps);
  std::vector<bool> out(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < out.size(); ++s) out[s] = cube.subset_of(state_assignment(s, n, 0));
  return out;
}

std::vector<bool> explicit_preimage(const ExplicitSystem& sys, const std::vector<bool>& target) {
  std::vector<bool> out(sys.succ.size());
  for (std::size_t s = 0; s < sys.succ.size(); ++s)
    for (auto s2 : sys.succ[s])
      if (target[s2]) {
        out[s] = true;
        break;
      }
  return out;
}

std::optional<int> bfs_bug_depth(const ExplicitSystem& sys, const std::vector<bool>& init,
                                 const std::vector<bool>& bad) {
  std::vector<int> dist(sys.succ.size(), -1);
  std::vector<std::uint32_t> queue;
  for (std::size_t s = 0; s < init.size(); ++s)
    if (init[s]) {
      dist[s] = 0;
      queue.push_back(std::uint32_t(s));
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto s = queue[head];
    if (bad[s]) return dist[s];
    for (auto s2 : sys.succ[s])
      if (dist[s2] < 0) {
        dist[s2] = dist[s] + 1;
        queue.push_back(s2);
      }
  }
  return std::nullopt;
}

ExplicitVerdict explicit_backward(const ExplicitSystem& sys, const std::vector<bool>& init,
                                  const std::vector<bool>& bad, int max_iters) {
  auto meets = [&](const std::vector<bool>& f) {
    for (std::size_t s = 0; s < f.size(); ++s)
      if (f[s] && init[s]) return true;
    return false;
  };
  ExplicitVerdict v;
  std::vector<bool> frame = bad, seen = bad;
  if (meets(frame)) {
    v.kind = ExplicitVerdict::bug;
    return v;
  }
  for (int k = 0; k < max_iters; ++k) {
    frame = explicit_preimage(sys, frame);
    v.iters = k + 1;
    if (meets(frame)) {
      v.kind = ExplicitVerdict::bug;
      v.depth = k + 1;
      return v;
    }
    bool contained = true;
    for (std::size_t s = 0; s < frame.size(); ++s)
      if (frame[s] && !seen[s]) {
        contained = false;
        seen[s] = true;
      }
    if (contained) {
      v.kind = ExplicitVerdict::safe;
      return v;
    }
  }
  return v;
}

}  // namespace pqe::oracle
