#include "common.hpp"
#include "pathcuts/generate.hpp"
#include "pathcuts/separation.hpp"
#include "pathcuts/solve.hpp"

#include <gtest/gtest.h>

using namespace pathcuts;
using pathcuts::testing::two_node;

namespace {

// Feasible for the LP relaxation of two_node, with both arcs just open enough.
FractionalPoint two_node_point() {
  FractionalPoint p;
  p.y = {3, 2};
  p.x = {0.75, 2.0 / 3.0};
  p.i = {0};
  p.r = {0};
  return p;
}

FractionalPoint root_point(const PathInstance& inst) {
  const auto model = build_lp_model(inst, check_a1(inst));
  const auto sol = solve_lp(model);
  EXPECT_EQ(sol.status, LpStatus::Optimal);
  return model.point(sol.values);
}

std::vector<std::string> keys(const std::vector<SeparatedCut>& cuts) {
  std::vector<std::string> out;
  for (const auto& c : cuts) out.push_back(normalized_key(c.cut));
  return out;
}

}  // namespace

TEST(Separation, WindowLimit) {
  SeparationConfig cfg;
  cfg.max_path_frac = 0.5;
  EXPECT_EQ(cfg.window_limit(50), 25);
  EXPECT_EQ(cfg.window_limit(7), 4);
  cfg.max_path_frac = 0.01;
  EXPECT_EQ(cfg.window_limit(50), 1);
  cfg.max_path_len = 5;
  EXPECT_EQ(cfg.window_limit(50), 5);
  EXPECT_EQ(cfg.window_limit(3), 3);
}

TEST(Separation, KnapsackPrefersArcsClosestToFull) {
  const auto inst = two_node();
  const auto pt = two_node_point();
  // scores: arc 1 (3 - 4*0.25)/4 = 0.5, arc 2 (2 - 3/3)/3 = 1/3
  EXPECT_EQ(knapsack_order(inst, 1, 2, pt), (std::vector<int>{1, 2}));
  EXPECT_EQ(knapsack_select(inst, 1, 2, pt), (std::vector<int>{1, 2}));
  EXPECT_EQ(knapsack_select(inst, 1, 1, pt), (std::vector<int>{1}));
}

TEST(Separation, FindsTheTwoNodeCover) {
  const auto inst = two_node();
  const auto pt = two_node_point();
  SeparationConfig cfg;
  cfg.max_path_frac = 1.0;
  const auto cuts = separate(inst, pt, cfg);
  ASSERT_FALSE(cuts.empty());
  const auto expected = build_path_cover(inst, [] {
    ArcSelection s;
    s.first = 1;
    s.last = 2;
    s.s_plus = {1, 2};
    return s;
  }());
  bool seen = false;
  for (const auto& c : cuts) seen = seen || normalized_key(c.cut) == normalized_key(expected);
  EXPECT_TRUE(seen);
  EXPECT_GE(cuts.front().violation, 5.0 / 6.0 - 1e-9);
}

TEST(Separation, ReportedViolationsAreExactAndSorted) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = generate_lotsizing(12, 100, 3, seed);
    const auto pt = root_point(inst);
    for (bool merged : {false, true}) {
      SeparationConfig cfg;
      cfg.merged = merged;
      const auto cuts = separate(inst, pt, cfg);
      EXPECT_FALSE(cuts.empty()) << "seed " << seed;
      for (std::size_t k = 0; k < cuts.size(); ++k) {
        EXPECT_NEAR(cuts[k].violation, cuts[k].cut.violation(inst, pt), 1e-9);
        EXPECT_GT(cuts[k].violation, cfg.eps);
        if (k) EXPECT_GE(cuts[k - 1].violation, cuts[k].violation);
      }
    }
  }
}

TEST(Separation, SeparatedCutsAreValidOnSmallInstances) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomShape shape;
    shape.n = 3;
    shape.max_arcs = 6;
    shape.outgoing_share = 0.2;
    const auto inst = transform_supply(generate_random(shape, seed));
    if (!check_a1(inst).empty()) continue;
    const auto model = build_lp_model(inst);
    const auto sol = solve_lp(model);
    if (sol.status != LpStatus::Optimal) continue;
    SeparationConfig cfg;
    cfg.max_path_frac = 1.0;
    for (const auto& c : separate(inst, model.point(sol.values), cfg)) {
      ++checked;
      EXPECT_TRUE(check_validity(inst, c.cut).valid) << "seed " << seed << ": " << dump(c.cut);
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(Separation, DeterministicAndCapped) {
  const auto inst = generate_lotsizing(20, 1000, 5, 4);
  const auto pt = root_point(inst);
  SeparationConfig cfg;
  const auto a = separate(inst, pt, cfg);
  const auto b = separate(inst, pt, cfg);
  EXPECT_EQ(keys(a), keys(b));
  ASSERT_GT(a.size(), 3u);
  cfg.max_cuts = 3;
  const auto capped = separate(inst, pt, cfg);
  ASSERT_EQ(capped.size(), 3u);
  const auto all = keys(a);
  EXPECT_EQ(keys(capped), (std::vector<std::string>(all.begin(), all.begin() + 3)));
}

TEST(Separation, MergedModeOnlyLoosensInteriorEdges) {
  const auto inst = generate_lotsizing(6, 100, 2, 1);
  const auto m = merged_mode(inst, 2, 4);
  EXPECT_EQ(m.fwd_cap[0], inst.fwd_cap[0]);
  EXPECT_EQ(m.fwd_cap[4], inst.fwd_cap[4]);
  for (int j = 2; j < 4; ++j) {
    EXPECT_GT(m.u(j), inst.demand_sum(1, 6));
    EXPECT_EQ(m.u(j), m.b(j));
  }
}
