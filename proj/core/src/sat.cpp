#include "pqe/sat.hpp"

#include <algorithm>

#include "pqe/oracle.hpp"

namespace pqe::sat {

ResultKind classify_result(const CnfFormula& f_star, bool used_f) {
  const bool is_false = std::any_of(f_star.clauses.begin(), f_star.clauses.end(),
                                    [](const Clause& c) { return c.is_empty(); });
  if (!f_star.empty() && !is_false)
    throw MalformedResult("result over no free variables must be a constant");
  if (!used_f) return ResultKind::kind1;
  return f_star.empty() ? ResultKind::kind2 : ResultKind::kind3;
}

Implication check_implication(const CnfFormula& g, const Clause& c) {
  Assignment falsify;
  for (Lit l : c.lits()) falsify.set(l.var(), !l.satisfying_value());
  auto model = oracle::reference_dpll(cofactor(g, falsify));
  if (!model) return {true, {}};
  Implication out;
  for (auto [v, b] : model->pairs()) out.counterexample.set(v, falsify.get(v).value_or(b));
  for (auto [v, b] : falsify.pairs()) out.counterexample.set(v, b);
  return out;
}

std::optional<Clause> generate_candidate(const SatState& state) {
  const int n = state.g.var_count;
  std::vector<char> fixed(n + 1, 0), occurs(n + 1, 0);
  std::vector<int> pos(n + 1, 0), neg(n + 1, 0);
  for (auto& c : state.g.clauses) {
    if (c.size() == 1) fixed[c.lits()[0].var()] = 1;
    for (Lit l : c.lits()) {
      occurs[l.var()] = 1;
      ++(l.negative() ? neg : pos)[l.var()];
    }
  }
  for (Var v = 1; v <= n; ++v) {
    if (!occurs[v] || fixed[v]) continue;
    Clause cand(state.next_id, {Lit(v, neg[v] > pos[v])});
    const bool subsumed = std::any_of(state.g.clauses.begin(), state.g.clauses.end(),
                                      [&](const Clause& c) { return subsumes(c, cand); });
    if (!subsumed) return cand;
  }
  return std::nullopt;
}

namespace {

Assignment complete(const Assignment& partial, int n) {
  Assignment a;
  for (Var v = 1; v <= n; ++v) a.set(v, partial.get(v).value_or(false));
  return a;
}

}  // namespace

SatResult sat_by_pqe(const CnfFormula& g, const SatConfig& config) {
  SatState state;
  state.g = g;
  for (auto& c : g.clauses) state.next_id = std::max<ClauseId>(state.next_id, c.id() + 1);
  SatResult result;
  const int n = g.var_count;

  auto finish_sat = [&](const Assignment& model) {
    result.sat = true;
    result.model = complete(model, n);
    if (!evaluate(g, result.model)) throw std::logic_error("model does not satisfy the input");
    return result;
  };

  for (;;) {
    if (state.iterations >= config.max_iterations)
      throw IterationLimit("no verdict after " + std::to_string(state.iterations) + " rounds");
    ++state.iterations;
    result.iterations = state.iterations;

    auto cand = generate_candidate(state);
    if (!cand) {
      // Every occurring variable is fixed by a unit clause.
      Assignment units;
      bool consistent = true;
      for (auto& c : state.g.clauses)
        if (c.size() == 1) {
          Lit l = c.lits()[0];
          if (units.get(l.var()).value_or(l.satisfying_value()) != l.satisfying_value())
            consistent = false;
          else
            units.set(l.var(), l.satisfying_value());
        }
      Assignment full = complete(units, n);
      result.log.push_back("c exhausted");
      if (consistent && evaluate(state.g, full)) return finish_sat(full);
      result.sat = false;
      return result;
    }

    EcnfProblem problem;
    problem.f.var_count = problem.g.var_count = n;
    problem.f.clauses.push_back(*cand);
    problem.g = state.g;
    std::vector<Var> all;
    for (Var v = 1; v <= n; ++v) all.push_back(v);
    problem.x_vars = VarSet(std::move(all));
    PqeSolution sol = solve_pqe(problem, config.pqe);
    result.pqe_nodes += sol.stats.nodes;
    ++state.next_id;
    for (auto& c : sol.final_f.clauses) state.next_id = std::max<ClauseId>(state.next_id, c.id() + 1);
    state.history.push_back(*cand);

    const ResultKind kind = classify_result(sol.f_star, sol.used_f);
    result.log.push_back("c round " + std::to_string(state.iterations) + " candidate " +
                         std::to_string(cand->lits()[0].to_dimacs()) + " kind " +
                         std::to_string(int(kind) + 1));
    switch (kind) {
      case ResultKind::kind1: {
        if (sol.f_star.empty()) break;
        const Clause& r = sol.f_star.clauses.front();
        if (r.is_empty()) {
          result.sat = false;
          return result;
        }
        state.g.clauses.push_back(Clause(state.next_id++, r.lits()));
        break;
      }
      case ResultKind::kind2:
        state.g.clauses.push_back(*cand);
        break;
      case ResultKind::kind3: {
        Implication imp = check_implication(state.g, *cand);
        if (!imp.implied) return finish_sat(imp.counterexample);
        result.sat = false;
        return result;
      }
    }
  }
}

}  // namespace pqe::sat
