#include "common.hpp"
#include "pathcuts/verify.hpp"

#include <gtest/gtest.h>

using namespace pathcuts;
using pathcuts::testing::single_node;
using pathcuts::testing::two_node;

namespace {

ArcSelection full(const PathInstance& inst, std::vector<int> s_plus, CoefficientMode mode = CoefficientMode::Cover) {
  ArcSelection sel;
  sel.first = 1;
  sel.last = inst.n;
  sel.s_plus = std::move(s_plus);
  sel.mode = mode;
  return sel;
}

int polytope_dimension(const PathInstance& inst) { return affine_dimension(enumerate_vertices(inst).points); }

}  // namespace

TEST(Facets, AffineDimensionOfSimpleSets) {
  const auto inst = single_node(1, {1});
  auto p = FeasiblePoint::zeros(inst);
  EXPECT_EQ(affine_dimension({}), -1);
  EXPECT_EQ(affine_dimension({p}), 0);
  auto q = p;
  q.y[0] = 1;
  auto r = p;
  r.x[0] = Rational(1, 2);
  auto s = p;
  s.y[0] = 2;
  EXPECT_EQ(affine_dimension({p, q, s}), 1);
  EXPECT_EQ(affine_dimension({p, q, r, s}), 2);
}

// y1 + y2 + y3 = 6 with capacities 5, 4, 3: every arc can be closed, so the polytope has dimension 5.
TEST(Facets, SingleNodeCoverIsAFacet) {
  const auto inst = single_node(6, {5, 4, 3});
  EXPECT_EQ(polytope_dimension(inst), 5);
  const auto sel = full(inst, {1, 2});
  const auto cut = build_path_cover(inst, sel);
  EXPECT_EQ(cut.rhs, Rational(3));
  EXPECT_EQ(face_dimension(inst, cut), 4);
  const auto nec = check_cover_necessary(inst, sel);
  EXPECT_TRUE(nec.all());
}

// lambda = 0 makes the cover the sum of the two variable upper bounds.
TEST(Facets, VariableUpperBoundSumFailsConditionOne) {
  const auto inst = single_node(9, {5, 4, 3});
  const auto sel = full(inst, {1, 2});
  const auto cut = build_path_cover(inst, sel);
  EXPECT_EQ(cut.x, (std::map<int, Rational>{{1, Rational(-5)}, {2, Rational(-4)}}));
  EXPECT_EQ(cut.rhs, Rational(0));
  const auto nec = check_cover_necessary(inst, sel);
  EXPECT_FALSE(nec.at("i").holds);
  EXPECT_LT(face_dimension(inst, cut), polytope_dimension(inst) - 1);
}

// Both arcs are indispensable here, so the cover is tight on the whole polytope.
TEST(Facets, TwoNodeCoverIsImproper) {
  const auto inst = two_node();
  const auto cut = build_path_cover(inst, full(inst, {1, 2}));
  EXPECT_EQ(polytope_dimension(inst), 2);
  EXPECT_EQ(face_dimension(inst, cut), 2);
}

TEST(Facets, ConditionChecksNeedTheFullPath) {
  const auto inst = two_node();
  auto sel = full(inst, {1});
  sel.last = 1;
  EXPECT_THROW(check_cover_necessary(inst, sel), std::invalid_argument);
  EXPECT_THROW(check_cover_necessary(inst, full(inst, {1})), std::invalid_argument);
  EXPECT_THROW(check_pack_necessary(inst, full(inst, {1, 2}, CoefficientMode::Pack)), std::invalid_argument);
}

TEST(Facets, PackConditionTwoIsVacuousWithoutSMinus) {
  const auto inst = two_node();
  const auto rep = check_pack_necessary(inst, full(inst, {1}, CoefficientMode::Pack));
  EXPECT_TRUE(rep.at("ii").holds);
  EXPECT_EQ(rep.at("ii").detail, "S- empty");
  EXPECT_EQ(rep.conditions.size(), 6u);
}

TEST(Facets, SufficientChecksOnlyApplyToLotSizingShape) {
  const auto inst = single_node(6, {5, 4, 3});
  const auto rep = check_cover_sufficient(inst, full(inst, {1, 2}));
  EXPECT_EQ(rep.verdict, Verdict::NotApplicable);
  EXPECT_FALSE(rep.reason.empty());
  const auto lot = check_cover_sufficient(two_node(), full(two_node(), {1, 2}));
  EXPECT_NE(lot.verdict, Verdict::NotApplicable);
}

TEST(Facets, CoverWitnessIsFeasibleAndTight) {
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    PathInstance inst;
    inst.n = static_cast<int>(rng.uniform_int(1, 4));
    for (int j = 1; j <= inst.n; ++j) {
      inst.demand.push_back(rng.uniform_int(1, 6));
      inst.arcs.push_back(pathcuts::testing::arc(j, j, true, rng.uniform_int(1, 9)));
    }
    for (int j = 1; j < inst.n; ++j) {
      inst.fwd_cap.push_back(rng.uniform_int(1, 6));
      inst.bwd_cap.push_back(rng.uniform_int(1, 6));
      inst.fwd_cost.push_back(Rational(1));
      inst.bwd_cost.push_back(Rational(1));
    }
    std::vector<int> s_plus;
    for (const auto& a : inst.arcs)
      if (rng.coin(0.7)) s_plus.push_back(a.id);
    const auto sel = full(inst, s_plus);
    if (!maxflow_value(inst, sel) || !is_path_cover(inst, sel, compute_profile(inst, sel))) continue;
    const auto cut = build_path_cover(inst, sel);
    const auto pt = build_cover_witness(inst, sel);
    EXPECT_EQ(constraint_violation(inst, pt), Rational(0)) << "seed " << seed;
    EXPECT_EQ(cut.lhs<Rational>(inst, pt), cut.rhs) << "seed " << seed;
    ++built;
  }
  EXPECT_GT(built, 30);
}

TEST(Facets, SeparabilityAndRemarkIdentitiesHold) {
  int triggered = 0;
  for (std::uint64_t k = 0; k < 300; ++k) {
    const auto seed = detail::mix_seed(5, k);
    const auto inst = transform_supply(detail::sweep_instance(seed, 6, 8));
    Rng rng(seed);
    auto sel = detail::random_selection(inst, rng);
    if (!maxflow_value(inst, sel)) continue;
    EXPECT_TRUE(independence_flags(inst, sel).remarks_consistent) << "seed " << seed;
    for (const auto& c : separability_checks(inst, sel)) {
      EXPECT_TRUE(c.holds()) << "seed " << seed << " lemma " << c.lemma << " node " << c.node;
      triggered += c.triggered;
    }
  }
  EXPECT_GT(triggered, 20);
}

TEST(Facets, ExampleFaceDimensions) {
  const auto ex = reconstruct_example();
  ASSERT_TRUE(ex.found);
  const auto verts = enumerate_vertices(ex.inst);
  const int dim = affine_dimension(verts.points);
  EXPECT_EQ(dim, 10);
  EXPECT_EQ(face_dimension(ex.inst, verts, build_path_cover(ex.inst, ex.cover)), 8);
  auto pack = ex.pack;
  pack.mode = CoefficientMode::Pack;
  EXPECT_EQ(face_dimension(ex.inst, verts, build_path_pack(ex.inst, pack)), 8);
}

TEST(Facets, SmallSweepCountsAreConsistent) {
  FacetFamily fam;
  fam.max_n = 2;
  fam.max_arcs = 2;
  std::int64_t records = 0;
  const auto st = facet_sweep(fam, 8, [&](const FacetRecord& r) {
    ++records;
    EXPECT_LE(r.face_dim, r.facet_dim + 1);
  });
  EXPECT_GT(st.instances, 10);
  EXPECT_EQ(records, st.cuts);
  EXPECT_LE(st.facets, st.cuts);
  EXPECT_LE(st.necessary_exception_cuts, st.facets);
  EXPECT_LE(st.necessary_exceptions_trivial, st.necessary_exception_cuts);
}
