#include "common.hpp"
#include "pathcuts/generate.hpp"

#include <gtest/gtest.h>

using namespace pathcuts;
using pathcuts::testing::arc;
using pathcuts::testing::two_node;

TEST(Instance, ValidateRejectsMalformedShapes) {
  auto inst = two_node();
  EXPECT_NO_THROW(inst.validate());

  auto bad = inst;
  bad.demand.push_back(1);
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.fwd_cap[0] = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.arcs[1].id = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.arcs[0].node = 3;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.arcs[0].capacity = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Instance, PathAccessorsAreZeroOutsideTheEdges) {
  auto inst = two_node();
  EXPECT_EQ(inst.u(0), 0);
  EXPECT_EQ(inst.u(1), 4);
  EXPECT_EQ(inst.u(2), 0);
  EXPECT_EQ(inst.b(1), 2);
  EXPECT_EQ(inst.demand_sum(1, 2), 5);
  EXPECT_EQ(inst.capacity_sum(ArcDirection::Incoming), 7);
  EXPECT_EQ(inst.capacity_sum(ArcDirection::Outgoing), 0);
}

TEST(Instance, TransformSupplyReplacesNegativeDemands) {
  auto inst = two_node();
  inst.demand = {-3, 5};
  auto t = transform_supply(inst);
  EXPECT_EQ(t.d(1), 0);
  EXPECT_EQ(t.d(2), 5);
  ASSERT_EQ(t.arcs.size(), 3u);
  const auto& dummy = t.arcs.back();
  EXPECT_TRUE(dummy.dummy_supply);
  EXPECT_EQ(dummy.node, 1);
  EXPECT_EQ(dummy.capacity, 3);
  EXPECT_EQ(dummy.id, 3);
  EXPECT_EQ(transform_supply(two_node()).arcs.size(), 2u);
}

TEST(Instance, NormalizeClipsToFlowBoundsAndIsIdempotent) {
  PathInstance inst;
  inst.n = 2;
  inst.demand = {2, 3};
  inst.fwd_cap = {1};
  inst.bwd_cap = {1};
  inst.fwd_cost = {Rational(1)};
  inst.bwd_cost = {Rational(1)};
  inst.arcs = {arc(1, 1, true, 50), arc(2, 2, true, 4), arc(3, 2, false, 40)};
  auto once = normalize_assumptions(inst);
  // incoming at node 1: b(0) + u(1) + d1 + outgoing at node 1 = 0 + 1 + 2 + 0
  EXPECT_EQ(once.instance.arc(1).capacity, 3);
  // outgoing at node 2: b(2) + u(1) + (-d2)^+ + incoming at node 2 = 0 + 1 + 0 + 4
  EXPECT_EQ(once.instance.arc(3).capacity, 5);
  ASSERT_EQ(once.clips.size(), 2u);
  auto twice = normalize_assumptions(once.instance);
  EXPECT_TRUE(twice.clips.empty());
}

TEST(Instance, CheckClosabilityFindsIndispensableArcs) {
  auto inst = two_node();
  EXPECT_EQ(check_a1(inst), (std::vector<int>{1, 2}));
  inst.arcs[0].capacity = 8;
  inst.arcs[1].capacity = 8;
  inst.fwd_cap = {8};
  inst.bwd_cap = {8};
  EXPECT_TRUE(check_a1(inst).empty());
}

TEST(Instance, MultigraphRoundTripWithoutChords) {
  auto inst = two_node();
  inst.arcs.push_back(arc(3, 2, false, 2));
  auto back = extract_path(to_multigraph(inst));
  EXPECT_EQ(back.n, inst.n);
  EXPECT_EQ(back.demand, inst.demand);
  EXPECT_EQ(back.fwd_cap, inst.fwd_cap);
  EXPECT_EQ(back.bwd_cap, inst.bwd_cap);
  EXPECT_EQ(back.fwd_cost, inst.fwd_cost);
  ASSERT_EQ(back.arcs.size(), inst.arcs.size());
  for (std::size_t k = 0; k < inst.arcs.size(); ++k) {
    EXPECT_EQ(back.arcs[k].id, inst.arcs[k].id);
    EXPECT_EQ(back.arcs[k].node, inst.arcs[k].node);
    EXPECT_EQ(back.arcs[k].direction, inst.arcs[k].direction);
    EXPECT_EQ(back.arcs[k].capacity, inst.arcs[k].capacity);
  }
}

TEST(Instance, ExtractPathSplitsChordsAndDropsOffPathArcs) {
  Multigraph g;
  g.nodes = {1, 2, 3, 9};
  g.path = {1, 2, 3};
  g.demand = {{3, 4}};
  g.arcs = {{1, 1, 2, 5, Rational(0), Rational(1)}, {2, 2, 3, 5, Rational(0), Rational(1)},
            {3, 2, 1, 5, Rational(0), Rational(1)}, {4, 3, 2, 5, Rational(0), Rational(1)},
            {5, 1, 3, 7, Rational(2), Rational(3)}, {6, 9, 1, 6, Rational(1), Rational(1)},
            {7, 9, 9, 6, Rational(1), Rational(1)}};
  auto inst = extract_path(g);
  ASSERT_EQ(inst.arcs.size(), 3u);
  EXPECT_EQ(inst.arc(5).direction, ArcDirection::Outgoing);
  EXPECT_EQ(inst.arc(5).node, 1);
  EXPECT_EQ(inst.arc(6).node, 1);
  const auto& head = inst.arcs.back();
  EXPECT_EQ(head.id, 8);
  EXPECT_EQ(head.node, 3);
  EXPECT_TRUE(head.incoming());
  EXPECT_EQ(head.capacity, 7);
  EXPECT_EQ(head.fixed_cost, Rational(0));
}

TEST(Generate, LotSizingIsDeterministicWithOneArcPerPeriod) {
  auto a = generate_lotsizing(50, 100, 2, 1);
  auto b = generate_lotsizing(50, 100, 2, 1);
  EXPECT_EQ(a.arcs.size(), 50u);
  EXPECT_EQ(a.demand, b.demand);
  EXPECT_EQ(a.fwd_cap, b.fwd_cap);
  for (std::size_t k = 0; k < a.arcs.size(); ++k) {
    EXPECT_EQ(a.arcs[k].capacity, b.arcs[k].capacity);
    EXPECT_EQ(a.arcs[k].node, static_cast<int>(k) + 1);
    EXPECT_EQ(a.arcs[k].fixed_cost, a.arcs[k].var_cost * 100);
  }
  for (auto d : a.demand) {
    EXPECT_GE(d, 0);
    EXPECT_LE(d, 30);
  }
  auto c = generate_lotsizing(50, 100, 2, 2);
  EXPECT_NE(a.demand, c.demand);
}

TEST(Generate, RandomInstancesRespectTheShape) {
  RandomShape shape;
  shape.n = 3;
  shape.max_arcs = 5;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = generate_random(shape, seed);
    EXPECT_EQ(inst.n, 3);
    EXPECT_GE(inst.arcs.size(), 1u);
    EXPECT_LE(inst.arcs.size(), 5u);
    for (std::size_t k = 0; k < inst.arcs.size(); ++k) EXPECT_EQ(inst.arcs[k].id, static_cast<int>(k) + 1);
  }
}

TEST(Generate, RngRangeIsInclusive) {
  Rng rng(3);
  std::int64_t lo = 10, hi = 0;
  for (int k = 0; k < 2000; ++k) {
    auto v = rng.uniform_int(1, 4);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_EQ(lo, 1);
  EXPECT_EQ(hi, 4);
  EXPECT_THROW(rng.uniform_int(2, 1), std::invalid_argument);
}
