// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "pqe/engine.hpp"
#include "pqe/generate.hpp"
#include "pqe/io.hpp"
#include "pqe/mc.hpp"
#include "pqe/oracle.hpp"
#include "pqe/sat.hpp"

using namespace pqe;
using namespace pqe::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
}

std::string body_of(const std::string& out) {
  std::string b;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != 'c' && line[0] != 'p') b += line + "\n";
  return b;
}

// F* part of a `pqe`/`qe` output: everything from the banner to the trace.
std::string cnf_part(const std::string& out) {
  auto start = out.find("c f-star\n");
  if (start == std::string::npos) start = out.find("c qe-result\n");
  auto end = out.find("c trace\n");
  return out.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Outcome golden_instance() {
  TempFile f("golden.pcnf", kGoldenPcnf);
  auto t0 = Clock::now();
  CliRun r = run_cli({"pqe", f.path()});
  const double ms = seconds_since(t0) * 1000;
  if (r.code != 0 || body_of(r.out) != "1 0\n") return {false, "unexpected output:\n" + r.out};

  SolverConfig cfg;
  cfg.trace = true;
  PqeSolution sol = solve_pqe(io::parse_pcnf(kGoldenPcnf), cfg);
  bool resolvent_ok = false;
  for (auto& a : sol.resolvents)
    if (a.clause.to_dimacs() == std::vector<int>{Y} && a.pivot == X1) resolvent_ok = true;
  const bool roots_ok = sol.root.find(1) && sol.root.find(1)->cond.empty() && sol.root.find(2) &&
                        sol.root.find(2)->cond.empty();
  const bool trace_ok = std::count(sol.trace.begin(), sol.trace.end(), "d 0 1 0") == 1 &&
                        std::count(sol.trace.begin(), sol.trace.end(), "d 0 2 0") == 1;
  if (!resolvent_ok || !roots_ok || !trace_ok) return {false, "trace does not show (y) on x1 and ({} -> C1), ({} -> C2)"};
  return {ms < 10.0, "F* = (y), nodes=" + std::to_string(sol.stats.nodes) + ", " + fmt(ms) + " ms (limit 10 ms)"};
}

Outcome pqe_oracle() {
  auto t0 = Clock::now();
  int passed = 0;
  std::string first_bad;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    EcnfProblem p = gen::random_pqe(seed, {1, 12, 1, 30, 1, 4, 0.0});
    TempFile in("p.pcnf", io::write_pcnf(p));
    CliRun r = run_cli({"pqe", in.path()});
    TempFile fs("f.cnf", cnf_part(r.out));
    if (r.code == 0 && run_cli({"check", in.path(), fs.path()}).code == 0) ++passed;
    else if (first_bad.empty()) first_bad = " first failure seed " + std::to_string(seed);
  }
  const double s = seconds_since(t0);
  return {passed == 1000 && s < 120, std::to_string(passed) + "/1000 checked, " + fmt(s) + " s (limit 120 s)" + first_bad};
}

Outcome dsequent_soundness() {
  auto t0 = Clock::now();
  SolverConfig cfg;
  cfg.verify = true;
  std::size_t total = 0, bad = 0;
  int roots_ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EcnfProblem p = gen::random_pqe(5000 + seed, {1, 10, 1, 24, 1, 4, 0.0});
    PqeSolution sol = solve_pqe(p, cfg);
    for (auto& e : sol.emitted) {
      ++total;
      if (!oracle::check_dsequent(e.snapshot, p.x_vars, e.dseq)) ++bad;
    }
    CnfFormula final_h = sol.final_f;
    final_h.clauses.insert(final_h.clauses.end(), p.g.clauses.begin(), p.g.clauses.end());
    // Every original X-clause of F carries an unconditional root D-sequent;
    // ({} -> all X-clauses of the final F) holds semantically.
    bool unconditional = true;
    for (auto& c : p.f.clauses)
      if (is_x_clause(c, p.x_vars)) {
        const DSequent* d = sol.root.find(c.id());
        if (!d || !d->cond.empty()) unconditional = false;
      }
    std::vector<ClauseId> xs;
    for (auto& c : sol.final_f.clauses)
      if (is_x_clause(c, p.x_vars)) xs.push_back(c.id());
    if (xs.empty()) {
      ++roots_ok;
      continue;
    }
    if (unconditional && oracle::check_dsequent(final_h, p.x_vars, DSequent({}, xs))) ++roots_ok;
  }
  const double s = seconds_since(t0);
  return {bad == 0 && roots_ok == 200 && s < 120,
          std::to_string(total - bad) + "/" + std::to_string(total) + " D-sequents hold, " +
              std::to_string(roots_ok) + "/200 root D-sequents hold, " + fmt(s) + " s (limit 120 s)"};
}

Outcome qe_tables() {
  auto t0 = Clock::now();
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    EcnfProblem p = gen::random_pqe(9000 + seed, {1, 10, 1, 24, 1, 4, 0.0});
    EcnfProblem whole;
    whole.x_vars = p.x_vars;
    whole.f = p.f;
    whole.f.clauses.insert(whole.f.clauses.end(), p.g.clauses.begin(), p.g.clauses.end());
    whole.f.var_count = whole.g.var_count = p.var_count();
    TempFile in("q.pcnf", io::write_pcnf(whole));
    CliRun r = run_cli({"qe", in.path()});
    if (r.code != 0) continue;
    CnfFormula out = io::parse_dimacs(cnf_part(r.out));
    std::vector<Var> ys = whole.free_vars();
    if (oracle::exists_table(out, ys) == oracle::exists_table(whole.f, ys)) ++passed;
  }
  const double s = seconds_since(t0);
  return {passed == 500 && s < 60, std::to_string(passed) + "/500 tables equal, " + fmt(s) + " s (limit 60 s)"};
}

}  // namespace

namespace {

Outcome sat_agreement() {
  auto t0 = Clock::now();
  std::vector<gen::Named> suite;
  for (std::uint64_t seed = 0; seed < 500; ++seed)
    suite.push_back({"random-" + std::to_string(seed), gen::random_kcnf(seed, 20, 85, 3)});
  for (auto& s : gen::structured_suite()) suite.push_back(s);
  // Bounded per PQE call so the run stays finite; a limited instance counts
  // as a disagreement.
  sat::SatConfig cfg;
  cfg.pqe.node_budget = 100'000;
  int agree = 0, sat_count = 0, limited = 0;
  std::string first_bad;
  for (auto& [name, h] : suite) {
    sat::SatResult r;
    try {
      r = sat::sat_by_pqe(h, cfg);
    } catch (const ResourceLimit&) {
      ++limited;
      if (first_bad.empty()) first_bad = ", first failure " + name;
      continue;
    }
    const bool expect = oracle::reference_dpll(h).has_value();
    const bool model_ok = !r.sat || evaluate(h, r.model);
    if (r.sat == expect && model_ok) ++agree;
    else if (first_bad.empty()) first_bad = ", first failure " + name;
    sat_count += r.sat;
  }
  const double s = seconds_since(t0);
  return {agree == int(suite.size()) && s < 300,
          std::to_string(agree) + "/" + std::to_string(suite.size()) + " agree (" +
              std::to_string(sat_count) + " sat, " + std::to_string(limited) +
              " over 100000 nodes in one PQE call), " + fmt(s) + " s (limit 300 s)" + first_bad};
}

std::vector<std::pair<std::string, mc::TransitionSystem>> toy_systems() {
  std::vector<std::pair<std::string, mc::TransitionSystem>> out;
  for (int n = 2; n <= 8; n += 2) {
    const std::uint32_t top = (1u << n) - 1;
    out.push_back({"counter" + std::to_string(n) + "-bug", gen::counter(n, 0, top)});
    out.push_back({"counter" + std::to_string(n) + "-mid", gen::counter(n, 1, top / 2)});
    out.push_back({"counter" + std::to_string(n) + "-stuck", gen::counter(n, 0, top, int(top / 2))});
  }
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 3 + int(seed % 4);
    out.push_back({"random" + std::to_string(n) + "-" + std::to_string(seed),
                   gen::random_total_ts(seed, n, 2 * n)});
  }
  return out;
}

Outcome mc_verdicts() {
  auto t0 = Clock::now();
  auto systems = toy_systems();
  int match = 0;
  std::string first_bad;
  for (auto& [name, ts] : systems) {
    ts.validate();
    auto r = mc::backward_reach(ts, 300);
    auto sys = oracle::enumerate_transitions(ts.t, ts.n);
    auto init = oracle::cube_set(ts.init, ts.n), bad = oracle::state_set(ts.bad, ts.n);
    auto expect = oracle::explicit_backward(sys, init, bad, 300);
    auto depth = oracle::bfs_bug_depth(sys, init, bad);
    bool ok;
    if (r.verdict == mc::Verdict::bug) {
      ok = expect.kind == oracle::ExplicitVerdict::bug && depth && *depth == r.depth &&
           expect.depth == r.depth;
      // replay: some path of length depth from the witness ends in bad
      std::vector<bool> at(sys.succ.size());
      std::uint32_t w = 0;
      for (Var v = 1; v <= ts.n; ++v) w |= std::uint32_t(r.witness.get(v).value_or(false)) << (v - 1);
      at[w] = init[w];
      for (int k = 0; k < r.depth; ++k) {
        std::vector<bool> next(at.size());
        for (std::size_t s = 0; s < at.size(); ++s)
          if (at[s])
            for (auto s2 : sys.succ[s]) next[s2] = true;
        at = next;
      }
      bool hit = false;
      for (std::size_t s = 0; s < at.size(); ++s) hit = hit || (at[s] && bad[s]);
      ok = ok && hit;
    } else if (r.verdict == mc::Verdict::safe) {
      ok = expect.kind == oracle::ExplicitVerdict::safe && !depth && expect.iters == r.iters;
    } else {
      ok = false;
    }
    if (ok) ++match;
    else if (first_bad.empty()) first_bad = " first mismatch " + name + " " + mc::format_result(r, ts.n);
  }

  int rejected = 0;
  for (int n = 2; n <= 4; ++n) {
    auto ts = gen::counter(n, 0, 1);
    ts.t.clauses.push_back(Clause::from_dimacs(1000, std::vector<int>{1, n + 1}));
    ts.t.clauses.push_back(Clause::from_dimacs(1001, std::vector<int>{1, -(n + 1)}));
    try {
      ts.validate();
    } catch (const mc::NonTotalTransition&) {
      ++rejected;
    }
  }
  const double s = seconds_since(t0);
  return {match == int(systems.size()) && rejected == 3 && s < 60,
          std::to_string(match) + "/" + std::to_string(systems.size()) + " verdicts match, " +
              std::to_string(rejected) + "/3 non-total relations rejected, " + fmt(s) +
              " s (limit 60 s)" + first_bad};
}

Outcome preimage_exact() {
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + int(seed % 5);
    auto ts = gen::random_total_ts(700 + seed, n, 3 * n);
    CnfFormula target = gen::random_kcnf(800 + seed, n, 1 + int(seed % 4), std::min(n, 2));
    CnfFormula pre = mc::preimage(mc::shift_next(target, n), ts.t, n);
    auto sys = oracle::enumerate_transitions(ts.t, n);
    if (oracle::state_set(pre, n) == oracle::explicit_preimage(sys, oracle::state_set(target, n))) ++equal;
  }
  return {equal == 50, std::to_string(equal) + "/50 pre-images equal"};
}

long field(const std::string& out, const std::string& key) {
  auto pos = out.find(key);
  if (pos == std::string::npos) return -1;
  return std::stol(out.substr(pos + key.size()));
}

Outcome pqe_vs_qe() {
  std::vector<double> ratios;
  std::vector<long> pqe_nodes, qe_nodes;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EcnfProblem p = gen::random_pqe(3000 + seed, {6, 12, 12, 30, 1, 4, 0.2});
    TempFile in("c.pcnf", io::write_pcnf(p));
    CliRun r = run_cli({"compare", in.path()});
    if (r.code != 0) return {false, "compare failed on seed " + std::to_string(3000 + seed)};
    const long a = field(r.out, "\npqe nodes="), b = field(r.out, "\nqe nodes=");
    pqe_nodes.push_back(a);
    qe_nodes.push_back(b);
    ratios.push_back(double(a) / double(b));
  }
  auto median = [](auto v) {
    std::sort(v.begin(), v.end());
    return (double(v[v.size() / 2 - 1]) + double(v[v.size() / 2])) / 2;
  };
  const double mp = median(pqe_nodes), mq = median(qe_nodes), mr = median(ratios);
  return {mp <= mq && mr <= 1.0, "median nodes pqe=" + fmt(mp) + " qe=" + fmt(mq) +
                                     ", median ratio " + fmt(mr) + " (limit 1.0)"};
}

Outcome determinism() {
  TempFile pcnf("d.pcnf", kGoldenPcnf);
  TempFile qe("d_qe.pcnf", "p pcnf 3 3 3\ne 1 0\n1 2 0\n-1 3 0\n2 -3 0\n");
  TempFile fs("d.cnf", "p cnf 5 1\n1 0\n");
  TempFile cnf("d_sat.cnf", io::write_dimacs(gen::random_kcnf(1, 20, 85, 3)));
  TempFile mct("d.mct", io::write_mct(gen::counter(3, 0, 7)));
  TempFile cmp("d_cmp.pcnf", io::write_pcnf(gen::random_pqe(4, {6, 12, 12, 30, 1, 4, 0.2})));
  std::vector<std::vector<std::string>> commands = {
      {"pqe", pcnf.path(), "--trace", "--seed", "7"},
      {"qe", qe.path(), "--seed", "7"},
      {"sat", cnf.path(), "--seed", "7", "--trace"},
      {"mc", mct.path(), "--max-iters", "20", "--seed", "7"},
      {"check", pcnf.path(), fs.path(), "--seed", "7"},
      {"gen", "--kind", "pqe", "--seed", "7"},
      {"gen", "--kind", "cnf", "--seed", "7"},
      {"gen", "--kind", "mct", "--seed", "7"},
      {"compare", cmp.path(), "--no-times", "--seed", "7"},
  };
  int same = 0;
  for (auto& c : commands) {
    CliRun a = run_cli(c), b = run_cli(c);
    if (a.code == b.code && a.out == b.out && !a.out.empty()) ++same;
  }
  return {same == int(commands.size()),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical on rerun"};
}

}  // namespace

int main() {
  report("golden-instance", golden_instance);
  report("pqe-oracle-1000", pqe_oracle);
  report("dsequent-soundness-200", dsequent_soundness);
  report("qe-truth-tables-500", qe_tables);
  report("sat-agreement-600", sat_agreement);
  report("mc-verdicts-20", mc_verdicts);
  report("preimage-exact-50", preimage_exact);
  report("pqe-vs-qe-nodes-100", pqe_vs_qe);
  report("determinism", determinism);
  return failures ? 1 : 0;
}
