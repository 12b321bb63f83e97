#pragma once

// Seeded instance generators.  Output depends only on the arguments: the
// engine is std::mt19937_64 and bounded draws avoid the implementation-
// defined standard distributions.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pqe/cnf.hpp"
#include "pqe/mc.hpp"

namespace pqe::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  int range(int lo, int hi);
  bool coin() { return engine_() & 1u; }
  // True with probability num/den.
  bool chance(int num, int den) { return range(1, den) <= num; }

 private:
  std::mt19937_64 engine_;
};

struct PqeParams {
  int min_vars = 2, max_vars = 12;
  int min_clauses = 1, max_clauses = 30;
  int min_len = 1, max_len = 4;
  // When positive, |F| <= f_to_g * |G|.
  double f_to_g = 0.0;
};

// Random exists X [F and G] with distinct, non-tautological clauses.
EcnfProblem random_pqe(std::uint64_t seed, const PqeParams& params = {});

// Random k-CNF with distinct clauses over distinct variables.
CnfFormula random_kcnf(std::uint64_t seed, int vars, int clauses, int k);

struct Named {
  std::string name;
  CnfFormula cnf;
};

// Crafted families: pigeonhole, implication chains, parity chains, graph
// colouring.  A fixed list of 100.
std::vector<Named> structured_suite();

CnfFormula pigeonhole(int holes);
CnfFormula implication_chain(int length, bool closed);
CnfFormula parity_cycle(int length);  // satisfiable iff length is even
CnfFormula cycle_coloring(int length, int colors);
CnfFormula clique_coloring(int size, int colors);

// n-bit binary counter, s' = s + 1 mod 2^n, bit 1 least significant.  With
// a stuck state the counter stays there forever.
mc::TransitionSystem counter(int n, std::uint32_t init, std::uint32_t bad, int stuck = -1);

// Random total relation: clauses over S and S' kept only when every state
// still has a successor.  Init is a full state cube, bad a random cube.
mc::TransitionSystem random_total_ts(std::uint64_t seed, int n, int t_clauses);

}  // namespace pqe::gen
