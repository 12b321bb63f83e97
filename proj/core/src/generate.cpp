#include "pqe/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "pqe/oracle.hpp"

namespace pqe::gen {

int Rng::range(int lo, int hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  return lo + int(engine_() % span);
}

namespace {

// Distinct variables drawn from [lo, hi].
std::vector<Var> pick_vars(Rng& rng, int lo, int hi, int k) {
  std::vector<Var> pool;
  for (Var v = lo; v <= hi; ++v) pool.push_back(v);
  k = std::min<int>(k, int(pool.size()));
  for (int i = 0; i < k; ++i) std::swap(pool[i], pool[rng.range(i, int(pool.size()) - 1)]);
  pool.resize(k);
  return pool;
}

std::vector<int> random_clause(Rng& rng, int lo, int hi, int len) {
  std::vector<int> lits;
  for (Var v : pick_vars(rng, lo, hi, len)) lits.push_back(rng.coin() ? v : -v);
  std::sort(lits.begin(), lits.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
  return lits;
}

void add(CnfFormula& h, std::vector<int> lits) {
  h.clauses.push_back(Clause::from_dimacs(ClauseId(h.clauses.size() + 1), lits));
}

CnfFormula coloring(int vertices, const std::vector<std::pair<int, int>>& edges, int colors) {
  CnfFormula h;
  h.var_count = vertices * colors;
  auto var = [&](int v, int c) { return v * colors + c + 1; };
  for (int v = 0; v < vertices; ++v) {
    std::vector<int> some;
    for (int c = 0; c < colors; ++c) some.push_back(var(v, c));
    add(h, some);
    for (int c = 0; c < colors; ++c)
      for (int d = c + 1; d < colors; ++d) add(h, {-var(v, c), -var(v, d)});
  }
  for (auto [a, b] : edges)
    for (int c = 0; c < colors; ++c) add(h, {-var(a, c), -var(b, c)});
  return h;
}

}  // namespace

EcnfProblem random_pqe(std::uint64_t seed, const PqeParams& params) {
  Rng rng(seed);
  const int vars = rng.range(params.min_vars, params.max_vars);
  const int target = rng.range(params.min_clauses, params.max_clauses);

  std::vector<Var> xs;
  for (Var v = 1; v <= vars; ++v)
    if (rng.coin()) xs.push_back(v);
  if (xs.empty()) xs.push_back(rng.range(1, vars));

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> clauses;
  for (int attempt = 0; int(clauses.size()) < target && attempt < 50 * target; ++attempt) {
    auto c = random_clause(rng, 1, vars, rng.range(params.min_len, params.max_len));
    if (seen.insert(c).second) clauses.push_back(std::move(c));
  }

  const int m = int(clauses.size());
  int max_f = m;
  if (params.f_to_g > 0) max_f = std::max(1, int(std::floor(params.f_to_g * m / (1.0 + params.f_to_g))));
  const int f_count = std::min(m, rng.range(1, max_f));

  EcnfProblem p;
  p.x_vars = VarSet(std::move(xs));
  p.f.var_count = p.g.var_count = vars;
  for (int i = 0; i < m; ++i)
    (i < f_count ? p.f : p.g).clauses.push_back(Clause::from_dimacs(ClauseId(i + 1), clauses[i]));
  return p;
}

CnfFormula random_kcnf(std::uint64_t seed, int vars, int clauses, int k) {
  Rng rng(seed);
  CnfFormula h;
  h.var_count = vars;
  std::set<std::vector<int>> seen;
  for (int attempt = 0; int(h.size()) < clauses && attempt < 50 * clauses; ++attempt) {
    auto c = random_clause(rng, 1, vars, k);
    if (seen.insert(c).second) add(h, c);
  }
  return h;
}

CnfFormula pigeonhole(int holes) {
  CnfFormula h;
  const int pigeons = holes + 1;
  h.var_count = pigeons * holes;
  auto var = [&](int p, int k) { return p * holes + k + 1; };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> some;
    for (int k = 0; k < holes; ++k) some.push_back(var(p, k));
    add(h, some);
  }
  for (int k = 0; k < holes; ++k)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) add(h, {-var(p, k), -var(q, k)});
  return h;
}

CnfFormula implication_chain(int length, bool closed) {
  CnfFormula h;
  h.var_count = length;
  add(h, {1});
  for (int v = 1; v < length; ++v) add(h, {-v, v + 1});
  if (closed) add(h, {-length});
  return h;
}

CnfFormula parity_cycle(int length) {
  CnfFormula h;
  h.var_count = length;
  for (int v = 1; v <= length; ++v) {
    const int w = v % length + 1;
    add(h, {v, w});
    add(h, {-v, -w});
  }
  return h;
}

CnfFormula cycle_coloring(int length, int colors) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < length; ++v) edges.emplace_back(v, (v + 1) % length);
  return coloring(length, edges, colors);
}

CnfFormula clique_coloring(int size, int colors) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) edges.emplace_back(a, b);
  return coloring(size, edges, colors);
}

std::vector<Named> structured_suite() {
  std::vector<Named> out;
  for (int i = 0; i < 100; ++i) {
    const int step = i / 5;
    switch (i % 5) {
      case 0: {
        const int holes = 1 + step % 4;
        out.push_back({"pigeonhole-" + std::to_string(holes), pigeonhole(holes)});
        break;
      }
      case 1: {
        const bool closed = step % 2;
        out.push_back({"chain-" + std::to_string(3 + step) + (closed ? "-closed" : "-open"),
                       implication_chain(3 + step, closed)});
        break;
      }
      case 2:
        out.push_back({"parity-" + std::to_string(3 + step), parity_cycle(3 + step)});
        break;
      case 3: {
        const int len = 3 + step % 8, colors = 2 + step % 2;
        out.push_back({"cycle-" + std::to_string(len) + "-" + std::to_string(colors),
                       cycle_coloring(len, colors)});
        break;
      }
      default: {
        const int size = 3 + step % 3, colors = size - 1 + step % 2;
        out.push_back({"clique-" + std::to_string(size) + "-" + std::to_string(colors),
                       clique_coloring(size, colors)});
        break;
      }
    }
  }
  return out;
}

mc::TransitionSystem counter(int n, std::uint32_t init, std::uint32_t bad, int stuck) {
  mc::TransitionSystem ts;
  ts.n = n;
  ts.t.var_count = 2 * n;
  ts.bad.var_count = n;
  auto bit = [](std::uint32_t s, int i) { return bool((s >> i) & 1u); };
  for (int i = 0; i < n; ++i) ts.init.set(i + 1, bit(init, i));
  for (int i = 0; i < n; ++i) add(ts.bad, {bit(bad, i) ? i + 1 : -(i + 1)});

  std::vector<int> not_stuck;
  if (stuck >= 0)
    for (int i = 0; i < n; ++i) not_stuck.push_back(bit(std::uint32_t(stuck), i) ? -(i + 1) : i + 1);
  // Increment clause, switched off in the stuck state: C | (s == stuck),
  // distributed over the literals of the stuck cube.
  auto guarded = [&](const std::vector<int>& lits) {
    bool holds_at_stuck = stuck < 0;
    for (int l : lits)
      if (std::abs(l) <= n && bit(std::uint32_t(std::max(stuck, 0)), std::abs(l) - 1) == (l > 0))
        holds_at_stuck = true;
    if (holds_at_stuck) {
      add(ts.t, lits);
      return;
    }
    for (int l : not_stuck) {
      auto with = lits;
      with.push_back(-l);
      try {
        add(ts.t, with);
      } catch (const TautologyError&) {
      }
    }
  };
  for (int i = 0; i < n; ++i) {
    const int a = i + 1, b = n + i + 1;
    std::vector<int> carry;
    for (int j = 0; j < i; ++j) carry.push_back(-(j + 1));
    auto flip1 = carry, flip2 = carry;
    flip1.insert(flip1.end(), {a, b});
    flip2.insert(flip2.end(), {-a, -b});
    guarded(flip1);
    guarded(flip2);
    for (int j = 0; j < i; ++j) {
      guarded({j + 1, -a, b});
      guarded({j + 1, a, -b});
    }
  }
  if (stuck >= 0)
    for (int i = 0; i < n; ++i) {
      auto lits = not_stuck;
      lits.push_back(bit(std::uint32_t(stuck), i) ? n + i + 1 : -(n + i + 1));
      add(ts.t, lits);
    }
  return ts;
}

mc::TransitionSystem random_total_ts(std::uint64_t seed, int n, int t_clauses) {
  Rng rng(seed);
  mc::TransitionSystem ts;
  ts.n = n;
  ts.t.var_count = 2 * n;
  ts.bad.var_count = n;
  for (Var v = 1; v <= n; ++v) ts.init.set(v, rng.coin());

  auto total = [&](const CnfFormula& t) {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      Assignment a;
      for (Var v = 1; v <= n; ++v) a.set(v, (s >> (v - 1)) & 1u);
      if (!oracle::reference_dpll(cofactor(t, a))) return false;
    }
    return true;
  };

  std::set<std::vector<int>> seen;
  for (int attempt = 0; int(ts.t.size()) < t_clauses && attempt < 20 * t_clauses; ++attempt) {
    auto lits = random_clause(rng, 1, 2 * n, rng.range(2, 4));
    if (std::none_of(lits.begin(), lits.end(), [&](int l) { return std::abs(l) > n; })) continue;
    if (!seen.insert(lits).second) continue;
    add(ts.t, lits);
    if (!total(ts.t)) ts.t.clauses.pop_back();
  }

  const int cube = rng.range(1, n);
  for (Var v : pick_vars(rng, 1, n, cube)) add(ts.bad, {rng.coin() ? v : -v});
  return ts;
}

}  // namespace pqe::gen
