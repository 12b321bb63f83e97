#include "pqe/mc.hpp"

#include "pqe/oracle.hpp"

namespace pqe::mc {

namespace {

void check_range(const CnfFormula& h, int lo, int hi, const char* what) {
  for (auto& c : h.clauses)
    for (Lit l : c.lits())
      if (l.var() < lo || l.var() > hi)
        throw VarOutOfRange(std::string(what) + ": variable " + std::to_string(l.var()) +
                            " outside " + std::to_string(lo) + ".." + std::to_string(hi));
}

CnfFormula shifted(const CnfFormula& h, int delta, int new_count) {
  CnfFormula out;
  out.var_count = new_count;
  for (auto& c : h.clauses) {
    if (c.is_true()) {
      out.clauses.push_back(c);
      continue;
    }
    std::vector<Lit> lits;
    for (Lit l : c.lits()) lits.emplace_back(l.var() + delta, l.negative());
    out.clauses.emplace_back(c.id(), std::move(lits));
  }
  return out;
}

Assignment state_of(std::uint64_t bits, int n) {
  Assignment s;
  for (Var v = 1; v <= n; ++v) s.set(v, (bits >> (v - 1)) & 1u);
  return s;
}

void check_cap(int n, int cap) {
  if (n > cap)
    throw oracle::CapExceeded("state enumeration over " + std::to_string(n) +
                              " variables exceeds cap " + std::to_string(cap));
}

}  // namespace

void TransitionSystem::validate(int enum_cap) const {
  if (n < 0) throw VarOutOfRange("negative state count");
  check_range(t, 1, 2 * n, "transition relation");
  check_range(bad, 1, n, "bad states");
  for (auto [v, b] : init.pairs())
    if (v < 1 || v > n) throw VarOutOfRange("init cube: variable " + std::to_string(v));
  check_cap(n, enum_cap);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (!oracle::reference_dpll(cofactor(t, state_of(s, n))))
      throw NonTotalTransition("state " + state_bits(state_of(s, n), n) + " has no successor");
}

CnfFormula shift_next(const CnfFormula& h, int n) {
  check_range(h, 1, n, "shift_next");
  return shifted(h, n, 2 * n);
}

CnfFormula unshift(const CnfFormula& h, int n) {
  check_range(h, n + 1, 2 * n, "unshift");
  return shifted(h, -n, n);
}

CnfFormula preimage(const CnfFormula& h_next, const CnfFormula& t, int n,
                    const SolverConfig& config, std::uint64_t* nodes) {
  EcnfProblem p;
  p.f.var_count = p.g.var_count = 2 * n;
  ClauseId id = 1;
  for (auto& c : h_next.clauses)
    if (!c.is_true()) p.f.clauses.emplace_back(id++, c.lits());
  for (auto& c : t.clauses)
    if (!c.is_true()) p.g.clauses.emplace_back(id++, c.lits());
  std::vector<Var> next;
  for (Var v = n + 1; v <= 2 * n; ++v) next.push_back(v);
  p.x_vars = VarSet(std::move(next));
  PqeSolution sol = solve_pqe(p, config);
  if (nodes) *nodes += sol.stats.nodes;
  CnfFormula out = sol.f_star;
  out.var_count = n;
  return out;
}

std::optional<Assignment> check_init_intersection(const Assignment& init,
                                                  const CnfFormula& frame, int n) {
  auto model = oracle::reference_dpll(cofactor(frame, init));
  if (!model) return std::nullopt;
  Assignment s;
  for (Var v = 1; v <= n; ++v)
    s.set(v, init.get(v).value_or(model->get(v).value_or(false)));
  return s;
}

bool fixpoint_check(const CnfFormula& new_frame, const std::vector<CnfFormula>& frames,
                    int n, int cap) {
  check_cap(n, cap);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment s = state_of(bits, n);
    if (!evaluate(new_frame, s)) continue;
    bool covered = false;
    for (auto& f : frames)
      if (evaluate(f, s)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

ReachResult backward_reach(const TransitionSystem& ts, int max_iters,
                           const SolverConfig& config, int enum_cap) {
  ReachResult r;
  r.frames.push_back(ts.bad);
  r.frames.back().var_count = ts.n;
  if (auto s = check_init_intersection(ts.init, r.frames[0], ts.n)) {
    r.verdict = Verdict::bug;
    r.witness = *s;
    return r;
  }
  for (int k = 0; k < max_iters; ++k) {
    CnfFormula next = preimage(shift_next(r.frames[k], ts.n), ts.t, ts.n, config, &r.pqe_nodes);
    r.iters = k + 1;
    if (auto s = check_init_intersection(ts.init, next, ts.n)) {
      r.frames.push_back(std::move(next));
      r.verdict = Verdict::bug;
      r.depth = k + 1;
      r.witness = *s;
      return r;
    }
    const bool fixed = fixpoint_check(next, r.frames, ts.n, enum_cap);
    r.frames.push_back(std::move(next));
    if (fixed) {
      r.verdict = Verdict::safe;
      return r;
    }
  }
  r.verdict = Verdict::unknown;
  return r;
}

std::string state_bits(const Assignment& s, int n) {
  std::string out;
  for (Var v = 1; v <= n; ++v) out += s.get(v).value_or(false) ? '1' : '0';
  return out;
}

std::string format_result(const ReachResult& r, int n) {
  switch (r.verdict) {
    case Verdict::safe:
      return "RESULT safe iters=" + std::to_string(r.iters);
    case Verdict::bug:
      return "RESULT bug depth=" + std::to_string(r.depth) + " state=" + state_bits(r.witness, n);
    case Verdict::unknown:
      break;
  }
  return "RESULT unknown";
}

}  // namespace pqe::mc
