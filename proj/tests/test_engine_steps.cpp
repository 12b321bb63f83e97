#include <gtest/gtest.h>

#include "common.hpp"
#include "pqe/engine.hpp"

using namespace pqe;
using namespace pqe::test;

TEST(Atomic, SatisfiedClauseAtYZero) {
  PqeEngine e(golden());
  e.assign(Y, false);
  DSequentSet ds;
  EXPECT_EQ(e.build_atomic_dsequents(ds), 0u);
  ASSERT_NE(ds.find(2), nullptr);
  EXPECT_EQ(*ds.find(2), DSequent({{Y, false}}, {2}));
  EXPECT_FALSE(ds.proved(1));
}

TEST(Atomic, FalsifiedWitness) {
  EcnfProblem p = golden();
  p.f.clauses.push_back(cl(8, {Y}));
  PqeEngine e(p);
  e.assign(Y, false);
  DSequentSet ds;
  EXPECT_EQ(e.build_atomic_dsequents(ds), 8u);
  ASSERT_NE(ds.find(1), nullptr);
  EXPECT_EQ(*ds.find(1), DSequent({{Y, false}}, {1}));
}

TEST(Atomic, BlockedClause) {
  PqeEngine e(golden());
  e.assign(Y, true);
  e.extend_pr_on_unit(2, X3, true);
  e.assign(X3, true);
  DSequentSet ds;
  e.build_atomic_dsequents(ds);
  ASSERT_NE(ds.find(5), nullptr);
  EXPECT_EQ(*ds.find(5), DSequent({{Y, true}, {X3, true}}, {5}));
}

TEST(IsBlocked, PartnerSatisfied) {
  PqeEngine e(golden());
  e.assign(Y, true);
  e.assign(X3, true);
  auto b = e.is_blocked(5, X4, {});
  EXPECT_TRUE(b.blocked);
  EXPECT_EQ(b.support, (Assignment{{Y, true}}));
}

TEST(IsBlocked, PartnerProved) {
  PqeEngine e(golden());
  e.assign(Y, true);
  DSequentSet ds;
  ds.put(5, DSequent({{Y, true}}, {5}));
  auto b = e.is_blocked(2, X3, ds);
  EXPECT_TRUE(b.blocked);
  EXPECT_EQ(b.support, (Assignment{{Y, true}}));
}

TEST(IsBlocked, UnsatisfiedPartner) {
  EcnfProblem p;
  p.x_vars = VarSet{1};
  p.f = formula(2, {{1, 2}});
  p.g = formula(2, {{-1, 2}}, 2);
  PqeEngine e(p);
  EXPECT_FALSE(e.is_blocked(1, 1, {}).blocked);
}

TEST(PickBranch, FreeVariablesFirst) {
  PqeEngine e(golden());
  auto b = e.pick_branch_variable({});
  EXPECT_EQ(b.var, Y);
  EXPECT_FALSE(b.first_value);
}

TEST(PickBranch, UnitClauseFalsifiedFirst) {
  PqeEngine e(golden());
  e.assign(Y, false);
  DSequentSet ds;
  e.build_atomic_dsequents(ds);
  auto b = e.pick_branch_variable(ds);
  EXPECT_EQ(b.var, X1);
  EXPECT_FALSE(b.first_value);
}

TEST(PickBranch, LowestPrVariable) {
  EcnfProblem p;
  p.x_vars = VarSet{1, 2, 3};
  p.f = formula(3, {{2, 3}});
  p.g = formula(3, {{1, -2}}, 2);
  PqeEngine e(p);
  auto b = e.pick_branch_variable({});
  EXPECT_EQ(b.var, 2);
  EXPECT_FALSE(b.first_value);
}

TEST(ExtendPr, GoldenNodes) {
  {
    PqeEngine e(golden());
    e.assign(Y, false);
    EXPECT_EQ(e.extend_pr_on_unit(1, X1, true), (std::vector<ClauseId>{3, 4}));
    EXPECT_EQ(e.pr_tag(3), 1);
  }
  {
    PqeEngine e(golden());
    e.assign(Y, true);
    EXPECT_EQ(e.extend_pr_on_unit(2, X3, true), (std::vector<ClauseId>{5}));
  }
  {
    EcnfProblem p;
    p.x_vars = VarSet{1};
    p.f = formula(2, {{1, 2}});
    p.g = formula(2, {{1, -2}}, 2);
    PqeEngine e(p);
    e.assign(2, false);
    EXPECT_TRUE(e.extend_pr_on_unit(1, 1, true).empty());
    EXPECT_THROW(e.extend_pr_on_unit(2, 1, true), std::invalid_argument);
  }
}

TEST(Dspqe, ConflictAtLeftmostLeaf) {
  PqeEngine e(golden());
  e.assign(Y, false);
  e.assign(X1, false);
  auto out = e.dspqe({});
  EXPECT_EQ(out.conflict, 1u);
}

TEST(Dspqe, AllSatisfiedNoBranching) {
  PqeEngine e(golden());
  e.assign(Y, true);
  e.assign(X3, true);
  auto out = e.dspqe({});
  EXPECT_EQ(out.conflict, 0u);
  EXPECT_EQ(e.stats().nodes, 1u);
  EXPECT_TRUE(out.ds.proved(1));
  EXPECT_TRUE(out.ds.proved(2));
}

TEST(Merge, ResolvesConflictsOnBranchVariable) {
  EcnfProblem p = golden();
  p.g.clauses.push_back(cl(7, {-X1}));
  PqeEngine e(p);
  e.assign(Y, false);
  auto out = e.merge_branches({{}, 1}, {{}, 7}, X1, false, {});
  ASSERT_NE(out.conflict, 0u);
  EXPECT_EQ(e.clause(out.conflict).to_dimacs(), (std::vector<int>{Y}));
}

TEST(Merge, AdoptsSideWithoutBranchVariable) {
  EcnfProblem p;
  p.x_vars = VarSet{1, 2};
  p.f = formula(3, {{1, 2, 3}});
  PqeEngine e(p);
  DSequentSet left, right;
  left.put(1, DSequent({{3, true}}, {1}));
  right.put(1, DSequent({{2, true}, {3, true}}, {1}));
  auto out = e.merge_branches({left, 0}, {right, 0}, 2, false, {});
  EXPECT_EQ(*out.ds.find(1), DSequent({{3, true}}, {1}));
}

TEST(Merge, JoinsAtRoot) {
  PqeEngine e(golden());
  DSequentSet left, right;
  left.put(1, DSequent({{Y, false}}, {1}));
  left.put(2, DSequent({{Y, false}}, {2}));
  right.put(1, DSequent({{Y, true}}, {1}));
  right.put(2, DSequent({{Y, true}}, {2}));
  auto out = e.merge_branches({left, 0}, {right, 0}, Y, false, {});
  EXPECT_EQ(*out.ds.find(1), DSequent({}, {1}));
  EXPECT_EQ(*out.ds.find(2), DSequent({}, {2}));
}
