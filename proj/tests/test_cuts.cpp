#include "common.hpp"
#include "pathcuts/verify.hpp"

#include <gtest/gtest.h>

using namespace pathcuts;
using pathcuts::testing::single_node;
using pathcuts::testing::two_node;
using Terms = std::map<int, Rational>;

namespace {

ArcSelection window(int first, int last, std::vector<int> s_plus, CoefficientMode mode = CoefficientMode::Cover) {
  ArcSelection sel;
  sel.first = first;
  sel.last = last;
  sel.s_plus = std::move(s_plus);
  sel.mode = mode;
  return sel;
}

}  // namespace

TEST(Cuts, TwoNodeCoverIsFrozen) {
  const auto inst = two_node();
  const auto cut = build_path_cover(inst, window(1, 2, {1, 2}));
  EXPECT_EQ(cut.y, (Terms{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_EQ(cut.x, (Terms{{1, Rational(-2)}, {2, Rational(-1)}}));
  EXPECT_TRUE(cut.i.empty());
  EXPECT_TRUE(cut.r.empty());
  EXPECT_EQ(cut.rhs, Rational(2));
  EXPECT_TRUE(check_validity(inst, cut).valid);
  EXPECT_EQ(cut.family, CutFamily::PathCover);
}

TEST(Cuts, SubWindowCoverCarriesTheBoundaryFlow) {
  const auto inst = two_node();
  const auto cut = build_path_cover(inst, window(1, 1, {1}));
  EXPECT_EQ(cut.y, (Terms{{1, Rational(1)}}));
  EXPECT_EQ(cut.x, (Terms{{1, Rational(-3)}}));
  EXPECT_EQ(cut.i, (Terms{{1, Rational(-1)}}));
  EXPECT_EQ(cut.rhs, Rational(0));
  EXPECT_TRUE(check_validity(inst, cut).valid);
}

TEST(Cuts, TwoNodePackIsFrozen) {
  const auto inst = two_node();
  const auto sel = window(1, 2, {1}, CoefficientMode::Pack);
  const auto pr = compute_profile(inst, sel);
  EXPECT_EQ(pr.mu, (std::vector<std::int64_t>{1, 1}));
  const auto cut = build_path_pack(inst, sel);
  EXPECT_EQ(cut.y, (Terms{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_EQ(cut.x, (Terms{{2, Rational(-1)}}));
  EXPECT_EQ(cut.rhs, Rational(4));
  EXPECT_TRUE(check_validity(inst, cut).valid);
}

TEST(Cuts, BuildersRejectSelectionsOutsideTheirClass) {
  const auto inst = two_node();
  EXPECT_THROW(build_path_cover(inst, window(1, 2, {1})), std::invalid_argument);
  EXPECT_THROW(build_path_pack(inst, window(1, 2, {1, 2}, CoefficientMode::Pack)), std::invalid_argument);
  EXPECT_THROW(build_path_cover(inst, window(1, 2, {1, 2}, CoefficientMode::Pack)), std::invalid_argument);
  EXPECT_THROW(build_flow_pack(inst, window(1, 2, {1, 2}, CoefficientMode::Pack)), std::invalid_argument);
}

TEST(Cuts, ValidityCheckFindsAViolatedInequality) {
  const auto inst = two_node();
  LinearInequality cut;
  cut.add_y(1, 1);
  cut.add_y(2, 1);
  cut.rhs = 4;
  const auto cert = check_validity(inst, cut);
  EXPECT_FALSE(cert.valid);
  ASSERT_TRUE(cert.max_violation);
  EXPECT_EQ(*cert.max_violation, Rational(1));
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(constraint_violation(inst, *cert.witness), Rational(0));
}

// Single node, d = 8, capacities 5 and 4: the pack leaving arc 2 out differs from the cover over both arcs.
TEST(Cuts, PackAndCoverDifferWhenKeptArcsExceedLambda) {
  const auto inst = single_node(8, {5, 4});
  const auto pack = build_path_pack(inst, window(1, 1, {1}, CoefficientMode::Pack));
  EXPECT_EQ(pack.y, (Terms{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_EQ(pack.x, (Terms{{2, Rational(-3)}}));
  EXPECT_EQ(pack.rhs, Rational(5));
  const auto cover = build_path_cover(inst, window(1, 1, {1, 2}));
  EXPECT_EQ(cover.x, (Terms{{1, Rational(-4)}, {2, Rational(-3)}}));
  EXPECT_EQ(cover.rhs, Rational(1));
  EXPECT_TRUE(check_validity(inst, pack).valid);
  EXPECT_TRUE(check_validity(inst, cover).valid);
  EXPECT_NE(normalized_key(pack), normalized_key(cover));
}

TEST(Cuts, FlowCoverMatchesPathCoverOnOneNode) {
  const auto inst = single_node(8, {5, 4, 2});
  const auto sel = window(1, 1, {1, 2});
  EXPECT_EQ(merged_excess(inst, sel), 1);
  const auto path = build_path_cover(inst, sel);
  const auto flow = build_flow_cover(inst, sel);
  EXPECT_EQ(path, flow);
  EXPECT_EQ(flow.family, CutFamily::FlowCover);
  EXPECT_FALSE(flow.y.count(3));
}

TEST(Cuts, DominanceReportOnTheTwoNodeCover) {
  const auto rep = dominance_report(two_node(), window(1, 2, {1, 2}));
  EXPECT_TRUE(rep.dominated);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_EQ(rep.entries[0].path_value, 2);
  EXPECT_EQ(rep.entries[0].merged_value, 2);
}

TEST(Cuts, NormalizedKeyIgnoresPositiveScaling) {
  const auto cut = build_path_cover(two_node(), window(1, 2, {1, 2}));
  LinearInequality scaled = cut;
  for (auto* terms : {&scaled.y, &scaled.x, &scaled.i, &scaled.r})
    for (auto& [k, c] : *terms) c *= Rational(3);
  scaled.rhs *= Rational(3);
  EXPECT_EQ(normalized_key(cut), normalized_key(scaled));
}

TEST(Cuts, SubmodularFormsAreValidOnRandomSelections) {
  int built = 0;
  for (std::uint64_t k = 0; k < 60; ++k) {
    const auto seed = detail::mix_seed(21, k);
    Rng rng(seed);
    RandomShape shape;
    shape.n = static_cast<int>(rng.uniform_int(1, 3));
    shape.max_arcs = 5;
    const auto inst = transform_supply(generate_random(shape, seed));
    const auto sel = detail::random_selection(inst, rng);
    if (!maxflow_value(inst, sel)) continue;
    for (auto form : {SubmodularForm::First, SubmodularForm::Second}) {
      LinearInequality cut;
      try {
        cut = build_submodular_generic(inst, sel, form);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++built;
      EXPECT_TRUE(check_validity(inst, cut).valid) << "seed " << seed << " " << dump(cut);
    }
  }
  EXPECT_GT(built, 40);
}

TEST(Cuts, ValiditySuitePasses) {
  VerifyOptions opt;
  opt.validity_instances = 40;
  opt.validity_selections = 6;
  const auto res = verify_validity(opt);
  EXPECT_TRUE(res.pass) << res.first_failure;
  EXPECT_GT(res.checked, 20);
}

TEST(Cuts, DominanceSuitePasses) {
  VerifyOptions opt;
  opt.dominance_selections = 200;
  const auto res = verify_dominance(opt);
  EXPECT_TRUE(res.pass) << res.first_failure;
}
