#include "pqe/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pqe/engine.hpp"
#include "pqe/generate.hpp"
#include "pqe/io.hpp"
#include "pqe/mc.hpp"
#include "pqe/oracle.hpp"
#include "pqe/sat.hpp"

namespace pqe::cli {

std::string RunConfig::header(const std::string& command) const {
  std::ostringstream os;
  os << "c " << command << " seed=" << seed << " node_budget=" << node_budget
     << " sat_cap=" << sat_cap << " table_cap=" << table_cap << " trace=" << (trace ? 1 : 0);
  return os.str();
}

namespace {

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  SolverConfig solver() const {
    SolverConfig s;
    s.node_budget = cfg.node_budget;
    s.trace = cfg.trace;
    return s;
  }
  oracle::Caps caps() const { return {cfg.sat_cap, cfg.table_cap}; }
};

std::string stats_line(const SolverStats& s) {
  std::ostringstream os;
  os << "c stats nodes=" << s.nodes << " resolvents=" << s.resolvents
     << " discarded=" << s.discarded << " joins=" << s.joins << " atomic=" << s.atomic[0] << ','
     << s.atomic[1] << ',' << s.atomic[2] << " pr_extensions=" << s.pr_extensions
     << " max_depth=" << s.max_depth;
  return os.str();
}

void print_trace(Context& ctx, const std::vector<std::string>& trace) {
  if (!ctx.cfg.trace) return;
  ctx.out << "c trace\n";
  for (auto& line : trace) ctx.out << line << '\n';
}

int cmd_pqe(Context& ctx, const std::string& path) {
  EcnfProblem p = io::parse_pcnf(io::read_file(path));
  PqeSolution sol = solve_pqe(p, ctx.solver());
  CnfFormula f_star = sol.f_star;
  f_star.var_count = p.var_count();
  ctx.out << ctx.cfg.header("pqe") << '\n' << stats_line(sol.stats) << '\n';
  ctx.out << io::write_dimacs(f_star, {"f-star"});
  print_trace(ctx, sol.trace);
  return kOk;
}

int cmd_qe(Context& ctx, const std::string& path) {
  EcnfProblem p = io::parse_pcnf(io::read_file(path));
  if (!p.g.empty())
    throw io::SemanticError("qe needs f_count equal to the clause count");
  PqeSolution sol = solve_pqe(p, ctx.solver());
  CnfFormula result = sol.f_star;
  result.var_count = p.var_count();
  ctx.out << ctx.cfg.header("qe") << '\n' << stats_line(sol.stats) << '\n';
  ctx.out << io::write_dimacs(result, {"qe-result"});
  print_trace(ctx, sol.trace);
  return kOk;
}

int cmd_sat(Context& ctx, const std::string& path, int max_iters) {
  CnfFormula h = io::parse_dimacs(io::read_file(path));
  sat::SatConfig sc;
  sc.pqe = ctx.solver();
  sc.pqe.trace = false;
  sc.max_iterations = max_iters;
  sat::SatResult r = sat::sat_by_pqe(h, sc);
  ctx.out << ctx.cfg.header("sat") << '\n';
  ctx.out << "c rounds=" << r.iterations << " pqe_nodes=" << r.pqe_nodes << '\n';
  if (ctx.cfg.trace)
    for (auto& line : r.log) ctx.out << line << '\n';
  if (!r.sat) {
    ctx.out << "s UNSATISFIABLE\n";
    return kUnsat;
  }
  ctx.out << "s SATISFIABLE\nv";
  for (auto [v, b] : r.model.pairs()) ctx.out << ' ' << (b ? v : -v);
  ctx.out << " 0\n";
  return kSat;
}

int cmd_mc(Context& ctx, const std::string& path, int max_iters) {
  mc::TransitionSystem ts = io::parse_mct(io::read_file(path));
  ts.validate(ctx.cfg.table_cap);
  SolverConfig sc = ctx.solver();
  sc.trace = false;
  mc::ReachResult r = mc::backward_reach(ts, max_iters, sc, ctx.cfg.table_cap);
  ctx.out << ctx.cfg.header("mc") << '\n';
  ctx.out << "c frames=" << r.frames.size() << " pqe_nodes=" << r.pqe_nodes << '\n';
  ctx.out << mc::format_result(r, ts.n) << '\n';
  return kOk;
}

int cmd_check(Context& ctx, const std::string& pcnf, const std::string& fstar) {
  EcnfProblem p = io::parse_pcnf(io::read_file(pcnf));
  CnfFormula f = io::parse_dimacs(io::read_file(fstar));
  const bool ok = oracle::check_pqe_solution(p, f, ctx.caps());
  ctx.out << ctx.cfg.header("check") << '\n' << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kCheckFailed;
}

struct GenOptions {
  std::string kind;
  int vars = -1;
  int clauses = -1;
  int len = -1;
  double f_ratio = 0.0;
};

int cmd_gen(Context& ctx, const GenOptions& g) {
  const std::uint64_t seed = ctx.cfg.seed;
  std::ostringstream what;
  what << "gen kind=" << g.kind;
  if (g.kind == "pqe") {
    gen::PqeParams params;
    if (g.vars > 0) params.max_vars = g.vars;
    if (g.clauses > 0) params.max_clauses = g.clauses;
    if (g.len > 0) params.max_len = g.len;
    params.min_vars = std::min(params.min_vars, params.max_vars);
    params.min_len = std::min(params.min_len, params.max_len);
    params.f_to_g = g.f_ratio;
    ctx.out << io::write_pcnf(gen::random_pqe(seed, params), {ctx.cfg.header(what.str()).substr(2)});
  } else if (g.kind == "cnf") {
    const int vars = g.vars > 0 ? g.vars : 20;
    const int clauses = g.clauses > 0 ? g.clauses : int(vars * 4.26 + 0.5);
    const int k = g.len > 0 ? g.len : 3;
    ctx.out << io::write_dimacs(gen::random_kcnf(seed, vars, clauses, k),
                                {ctx.cfg.header(what.str()).substr(2)});
  } else {
    const int n = g.vars > 0 ? g.vars : 4;
    const int clauses = g.clauses > 0 ? g.clauses : 3 * n;
    ctx.out << io::write_mct(gen::random_total_ts(seed, n, clauses),
                             {ctx.cfg.header(what.str()).substr(2)});
  }
  return kOk;
}

int cmd_compare(Context& ctx, const std::string& path, bool times) {
  EcnfProblem p = io::parse_pcnf(io::read_file(path));
  EcnfProblem whole;
  whole.x_vars = p.x_vars;
  whole.f = p.f;
  whole.f.var_count = p.var_count();
  whole.f.clauses.insert(whole.f.clauses.end(), p.g.clauses.begin(), p.g.clauses.end());
  whole.g.var_count = p.var_count();

  SolverConfig sc = ctx.solver();
  sc.trace = false;
  using Clock = std::chrono::steady_clock;
  auto timed = [&](const EcnfProblem& prob) {
    auto t0 = Clock::now();
    PqeSolution s = solve_pqe(prob, sc);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return std::make_pair(std::move(s), ms);
  };
  auto [pqe_sol, pqe_ms] = timed(p);
  auto [qe_sol, qe_ms] = timed(whole);

  ctx.out << ctx.cfg.header("compare") << '\n';
  ctx.out << "c f=" << p.f.size() << " g=" << p.g.size() << " x=" << p.x_vars.size() << '\n';
  ctx.out << "pqe nodes=" << pqe_sol.stats.nodes << " f_star=" << pqe_sol.f_star.size() << '\n';
  ctx.out << "qe nodes=" << qe_sol.stats.nodes << " f_star=" << qe_sol.f_star.size() << '\n';
  if (times) {
    ctx.out.setf(std::ios::fixed);
    ctx.out.precision(3);
    ctx.out << "c time pqe_ms=" << pqe_ms << " qe_ms=" << qe_ms << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial quantifier elimination with D-sequents", "pqe"};
  app.require_subcommand(1);
  Context ctx{{}, out, err};
  RunConfig& cfg = ctx.cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--node-budget", cfg.node_budget, "search node limit")->capture_default_str();
    sub->add_option("--sat-cap", cfg.sat_cap, "oracle SAT enumeration cap")->capture_default_str();
    sub->add_option("--table-cap", cfg.table_cap, "oracle truth-table cap")->capture_default_str();
    sub->add_flag("--trace", cfg.trace, "print trace records");
  };

  std::string file, file2;
  int max_iters = 100;
  int sat_rounds = 100'000;
  bool no_times = false;
  GenOptions g;

  auto* pqe = app.add_subcommand("pqe", "print F* for a PCNF file");
  pqe->add_option("file", file)->required();
  auto* qe = app.add_subcommand("qe", "eliminate X from a PCNF file with empty G");
  qe->add_option("file", file)->required();
  auto* sat = app.add_subcommand("sat", "decide a DIMACS CNF (exit 10 sat, 20 unsat)");
  sat->add_option("file", file)->required();
  sat->add_option("--max-iters", sat_rounds, "round limit")->capture_default_str();
  auto* mc = app.add_subcommand("mc", "backward reachability on an MCT file");
  mc->add_option("file", file)->required();
  mc->add_option("--max-iters", max_iters, "pre-image limit")->capture_default_str();
  auto* check = app.add_subcommand("check", "verify F* against a PCNF file (exit 3 on failure)");
  check->add_option("pcnf", file)->required();
  check->add_option("fstar", file2)->required();
  auto* gen = app.add_subcommand("gen", "emit a random instance");
  gen->add_option("--kind", g.kind)->required()->check(CLI::IsMember({"pqe", "cnf", "mct"}));
  gen->add_option("--vars", g.vars, "variables (pqe: maximum; mct: state bits)");
  gen->add_option("--clauses", g.clauses, "clauses (pqe: maximum; mct: T clauses)");
  gen->add_option("--len", g.len, "clause length (pqe: maximum)");
  gen->add_option("--f-ratio", g.f_ratio, "pqe: bound |F| <= ratio * |G|");
  auto* compare = app.add_subcommand("compare", "PQE against QE on one PCNF file");
  compare->add_option("file", file)->required();
  compare->add_flag("--no-times", no_times, "omit wall-clock times");
  for (auto* sub : {pqe, qe, sat, mc, check, gen, compare}) add_common(sub);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (cfg.node_budget == 0 || cfg.sat_cap < 0 || cfg.table_cap < 0 || max_iters < 0 || sat_rounds <= 0) {
    err << "error: limits must be positive\n";
    return kUsage;
  }

  try {
    if (*pqe) return cmd_pqe(ctx, file);
    if (*qe) return cmd_qe(ctx, file);
    if (*sat) return cmd_sat(ctx, file, sat_rounds);
    if (*mc) return cmd_mc(ctx, file, max_iters);
    if (*check) return cmd_check(ctx, file, file2);
    if (*gen) return cmd_gen(ctx, g);
    if (*compare) return cmd_compare(ctx, file, !no_times);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const io::SemanticError& e) {
    err << "input error: " << e.what() << '\n';
    return kParse;
  } catch (const mc::NonTotalTransition& e) {
    err << "input error: " << e.what() << '\n';
    return kParse;
  } catch (const mc::VarOutOfRange& e) {
    err << "input error: " << e.what() << '\n';
    return kParse;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const oracle::CapExceeded& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const sat::IterationLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }
  return kUsage;
}

}  // namespace pqe::cli
