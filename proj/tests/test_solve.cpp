#include "common.hpp"
#include "pathcuts/generate.hpp"
#include "pathcuts/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pathcuts;
using pathcuts::testing::two_node;

TEST(Simplex, SmallBoundedLp) {
  // min -x - 2y  s.t. x + y <= 4, x - y >= -2, 0 <= x <= 3, 0 <= y <= 5  ->  x = 1, y = 3
  Simplex<double> lp;
  int x = lp.add_column(0.0, 3.0, -1.0);
  int y = lp.add_column(0.0, 5.0, -2.0);
  lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::LessEqual, 4.0);
  lp.add_row({{x, 1.0}, {y, -1.0}}, RowSense::GreaterEqual, -2.0);
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), -7.0, 1e-9);
  EXPECT_NEAR(lp.primal()[x], 1.0, 1e-9);
  EXPECT_NEAR(lp.primal()[y], 3.0, 1e-9);
}

TEST(Simplex, DetectsInfeasibility) {
  Simplex<Rational> lp;
  int x = lp.add_column(Rational(0), Rational(1), Rational(1));
  lp.add_row({{x, Rational(1)}}, RowSense::GreaterEqual, Rational(2));
  EXPECT_EQ(lp.solve(), LpStatus::Infeasible);
}

TEST(Simplex, WarmStartAfterAddingAndRemovingRows) {
  Simplex<double> lp;
  int x = lp.add_column(0.0, 10.0, -1.0);
  int y = lp.add_column(0.0, 10.0, -1.0);
  lp.add_row({{x, 1.0}, {y, 2.0}}, RowSense::LessEqual, 8.0);
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), -8.0, 1e-9);
  int tight = lp.add_row({{x, 1.0}}, RowSense::LessEqual, 4.0);
  int slack = lp.add_row({{y, 1.0}}, RowSense::LessEqual, 9.0);
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), -6.0, 1e-9);
  // only rows with a basic slack are dropped
  EXPECT_EQ(lp.remove_rows({slack}), 1);
  EXPECT_EQ(lp.remove_rows({tight}), 0);
  EXPECT_EQ(lp.row_count(), 2);
  ASSERT_EQ(lp.solve(), LpStatus::Optimal);
  EXPECT_NEAR(lp.objective(), -6.0, 1e-9);
}

// The double simplex on the LP relaxation agrees with the exact slice LP when every arc is open.
TEST(Simplex, DoubleAgreesWithExactOnOpenSlices) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomShape shape;
    shape.n = 4;
    shape.max_arcs = 6;
    const auto inst = transform_supply(generate_random(shape, seed));
    std::vector<int> all;
    for (const auto& a : inst.arcs) all.push_back(a.id);
    const auto model = build_lp_model(inst, all);
    const auto lp = solve_lp(model);

    SliceObjective<Rational> obj;
    for (const auto& a : inst.arcs) obj.y.push_back(a.var_cost);
    obj.i = inst.fwd_cost;
    obj.r = inst.bwd_cost;
    const auto exact = optimize_slice<Rational>(inst, std::vector<bool>(inst.arcs.size(), true), obj, false);
    ASSERT_EQ(lp.status == LpStatus::Optimal, exact.status == LpStatus::Optimal) << "seed " << seed;
    if (exact.status != LpStatus::Optimal) continue;
    Rational fixed(0);
    for (const auto& a : inst.arcs) fixed += a.fixed_cost;
    EXPECT_NEAR(lp.objective, to_double(exact.value + fixed), 1e-6) << "seed " << seed;
  }
}

TEST(Solve, ComputeGaps) {
  BranchAndCutReport rep;
  rep.z_init = 60;
  rep.z_root = 90;
  rep.z_lb = 95;
  compute_gaps(rep, 100);
  EXPECT_DOUBLE_EQ(rep.init_gap, 40);
  EXPECT_DOUBLE_EQ(rep.root_gap, 10);
  EXPECT_DOUBLE_EQ(rep.gap_imp, 75);
  EXPECT_DOUBLE_EQ(rep.end_gap, 0.05);
  compute_gaps(rep, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isnan(rep.gap_imp));
  rep.z_init = 100;
  compute_gaps(rep, 100);
  EXPECT_TRUE(std::isnan(rep.gap_imp));
}

TEST(Solve, ParseCutArm) {
  EXPECT_EQ(parse_cut_arm("spi"), CutArm::Spi);
  EXPECT_EQ(parse_cut_arm("mspi"), CutArm::Mspi);
  EXPECT_EQ(parse_cut_arm("none"), CutArm::None);
  EXPECT_EQ(parse_cut_arm("cpxlike"), CutArm::CpxLike);
  EXPECT_THROW(parse_cut_arm("SPI"), std::invalid_argument);
}

TEST(Solve, TwoNodeOptimumMatchesOracle) {
  const auto inst = two_node();
  const auto oracle = mip_oracle(inst);
  ASSERT_TRUE(oracle.feasible);
  // Both arcs must open: 10 + 8 fixed, then 3*1 + 2*2 variable.
  EXPECT_EQ(oracle.optimum, Rational(25));
  for (auto arm : {CutArm::None, CutArm::Spi, CutArm::Mspi, CutArm::CpxLike}) {
    BranchAndCutConfig cfg;
    cfg.cuts = arm;
    const auto rep = branch_and_cut(inst, cfg);
    EXPECT_EQ(rep.status, "optimal") << to_string(arm);
    EXPECT_NEAR(rep.z_ub, 25.0, 1e-9) << to_string(arm);
  }
}

TEST(Solve, InfeasibleInstanceIsReported) {
  auto inst = two_node();
  inst.demand = {30, 2};
  EXPECT_FALSE(mip_oracle(inst).feasible);
  const auto rep = branch_and_cut(inst, {});
  EXPECT_EQ(rep.status, "infeasible");
}

TEST(Solve, CutsRaiseTheRootBoundAndStayBelowTheOptimum) {
  const auto inst = generate_lotsizing(10, 100, 2, 3);
  BranchAndCutConfig none;
  none.cuts = CutArm::None;
  const auto base = branch_and_cut(inst, none);
  BranchAndCutConfig spi;
  const auto cut = branch_and_cut(inst, spi);
  ASSERT_EQ(base.status, "optimal");
  ASSERT_EQ(cut.status, "optimal");
  EXPECT_NEAR(base.z_ub, cut.z_ub, 1e-6 * cut.z_ub);
  EXPECT_NEAR(base.z_init, cut.z_init, 1e-6 * cut.z_ub);
  EXPECT_GT(cut.z_root, base.z_root + 1e-6);
  EXPECT_LE(cut.z_root, cut.z_ub + 1e-6);
  EXPECT_GT(cut.cuts_added, 0);
}

TEST(Solve, RoundingOnlyAffectsIncumbentsNotRootBounds) {
  const auto inst = generate_lotsizing(15, 1000, 5, 2);
  BranchAndCutConfig plain;
  plain.root_only = true;
  BranchAndCutConfig rounded = plain;
  rounded.rounding = true;
  const auto a = branch_and_cut(inst, plain);
  const auto b = branch_and_cut(inst, rounded);
  EXPECT_DOUBLE_EQ(a.z_root, b.z_root);
  EXPECT_TRUE(std::isfinite(b.z_ub));
  EXPECT_GE(b.z_ub, b.z_root - 1e-6);
}

TEST(Solve, Deterministic) {
  const auto inst = generate_lotsizing(10, 100, 3, 5);
  BranchAndCutConfig cfg;
  cfg.node_limit = 200;
  const auto a = branch_and_cut(inst, cfg);
  const auto b = branch_and_cut(inst, cfg);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.z_root, b.z_root);
  EXPECT_EQ(a.z_ub, b.z_ub);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.cuts_added, b.cuts_added);
}

TEST(Solve, SolverSuiteAgreesWithOracle) {
  VerifyOptions opt;
  opt.solver_instances = 25;
  const auto res = verify_solver(opt);
  EXPECT_TRUE(res.pass) << res.first_failure;
}
