#include "common.hpp"
#include "pathcuts/verify.hpp"

#include <gtest/gtest.h>

using namespace pathcuts;
using pathcuts::testing::arc;
using pathcuts::testing::two_node;
using V = std::vector<std::int64_t>;

namespace {

ArcSelection full(const PathInstance& inst, std::vector<int> s_plus) {
  ArcSelection sel;
  sel.first = 1;
  sel.last = inst.n;
  sel.s_plus = std::move(s_plus);
  return sel;
}

}  // namespace

// Hand-computed recursions for the two-node fixture with both arcs in S+.
TEST(MinCut, TwoNodeProfileMatchesHandComputation) {
  const auto inst = two_node();
  const auto pr = compute_profile(inst, full(inst, {1, 2}));
  EXPECT_EQ(pr.alpha_u, (V{4, 7}));
  EXPECT_EQ(pr.alpha_d, (V{3, 5}));
  EXPECT_EQ(pr.beta_u, (V{7, 3}));
  EXPECT_EQ(pr.beta_d, (V{5, 2}));
  EXPECT_EQ(pr.m_u, (V{7, 7}));
  EXPECT_EQ(pr.m_d, (V{5, 5}));
  EXPECT_EQ(pr.value, 5);
  EXPECT_EQ(pr.lambda, (V{2, 2}));
  EXPECT_EQ(pr.mu, (V{0, 0}));
  EXPECT_TRUE(pr.constant_min());
}

TEST(MinCut, TwoNodeDropMarginalsMatchSmallerSets) {
  const auto inst = two_node();
  const auto sel = full(inst, {1, 2});
  EXPECT_EQ(marginal(inst, sel, 1, MarginalSide::Drop), 2);
  EXPECT_EQ(marginal(inst, sel, 2, MarginalSide::Drop), 1);
  EXPECT_EQ(compute_profile(inst, full(inst, {2})).value, 3);
  EXPECT_EQ(compute_profile(inst, full(inst, {1})).value, 4);
  EXPECT_EQ(maxflow_value(inst, full(inst, {2})), 3);
  EXPECT_EQ(maxflow_value(inst, full(inst, {1})), 4);
}

TEST(MinCut, AddMarginalOfIncomingArcIsCappedByMu) {
  const auto inst = two_node();
  const auto sel = full(inst, {1});
  const auto pr = compute_profile(inst, sel);
  const auto gain = marginal(inst, sel, pr, 2, MarginalSide::Add);
  EXPECT_EQ(gain, std::min<std::int64_t>(3, pr.mu_at(2)));
  EXPECT_EQ(gain, 1);
}

// d = 2, incoming arc 1 (cap 5), outgoing arc 2 (cap 4).
TEST(MinCut, OutgoingArcMarginalsFollowTheSignConventions) {
  auto inst = pathcuts::testing::single_node(2, {5});
  inst.arcs.push_back(arc(2, 1, false, 4));
  ArcSelection in_l = full(inst, {1});
  in_l.l_minus = {2};
  const auto pl = compute_profile(inst, in_l);
  EXPECT_EQ(pl.value, 2);
  EXPECT_EQ(pl.lambda_at(1), 3);
  EXPECT_EQ(marginal(inst, in_l, 2, MarginalSide::Drop), -3);
  EXPECT_EQ(detail::oracle_marginal(inst, in_l, 2, MarginalSide::Drop), -3);

  ArcSelection in_s = full(inst, {1});
  in_s.s_minus = {2};
  const auto ps = compute_profile(inst, in_s);
  EXPECT_EQ(ps.value, 5);
  EXPECT_EQ(ps.mu_at(1), 1);
  EXPECT_EQ(marginal(inst, in_s, 2, MarginalSide::Add), -3);
  EXPECT_EQ(detail::oracle_marginal(inst, in_s, 2, MarginalSide::Add), -3);

  ArcSelection in_k = full(inst, {1});
  EXPECT_EQ(marginal(inst, in_k, 2, MarginalSide::Add), 0);
}

TEST(MinCut, MarginalRejectsArcsOutsideTheRequestedSide) {
  const auto inst = two_node();
  const auto sel = full(inst, {1});
  EXPECT_THROW(marginal(inst, sel, 2, MarginalSide::Drop), std::invalid_argument);
  EXPECT_THROW(marginal(inst, sel, 1, MarginalSide::Add), std::invalid_argument);
}

TEST(MinCut, SelectionValidation) {
  auto inst = two_node();
  inst.arcs.push_back(arc(3, 2, false, 1));
  ArcSelection sel = full(inst, {1});
  sel.first = 1;
  sel.last = 1;
  EXPECT_NO_THROW(validate_selection(inst, sel));
  sel.s_plus = {2};
  EXPECT_THROW(validate_selection(inst, sel), std::invalid_argument);
  sel = full(inst, {3});
  EXPECT_THROW(validate_selection(inst, sel), std::invalid_argument);
  sel = full(inst, {1, 1});
  EXPECT_THROW(validate_selection(inst, sel), std::invalid_argument);
  sel = full(inst, {});
  sel.s_minus = {3};
  sel.l_minus = {3};
  EXPECT_THROW(validate_selection(inst, sel), std::invalid_argument);
  sel.last = 3;
  EXPECT_THROW(validate_selection(inst, sel), std::invalid_argument);
}

TEST(MinCut, DummySupplyArcMustStayInSPlus) {
  auto inst = two_node();
  inst.demand = {-2, 4};
  inst = transform_supply(inst);
  EXPECT_THROW(compute_profile(inst, full(inst, {1})), std::invalid_argument);
  const auto sel = full(inst, {1, 3});
  EXPECT_NO_THROW(compute_profile(inst, sel));
  EXPECT_THROW(marginal(inst, sel, 3, MarginalSide::Drop), std::invalid_argument);
}

// Published cut values of the four-node example, reproduced by the reconstructed instance.
TEST(MinCut, ExampleReconstructionReproducesPublishedValues) {
  const auto ex = reconstruct_example();
  ASSERT_TRUE(ex.found);
  const auto cover = compute_profile(ex.inst, ex.cover);
  EXPECT_EQ(cover.m_u, (V{45, 65, 60, 45}));
  EXPECT_EQ(cover.m_d, (V{40, 40, 40, 40}));
  const auto pack = compute_profile(ex.inst, ex.pack);
  EXPECT_EQ(pack.m_u, (V{30, 30, 30, 30}));
  EXPECT_EQ(pack.m_d, (V{40, 40, 30, 30}));
  EXPECT_EQ(ex.inst.demand, (V{5, 10, 5, 20}));
}

TEST(MinCut, ProfileAgreesWithMaxFlowOnRandomWindows) {
  int compared = 0;
  for (std::uint64_t k = 0; k < 400; ++k) {
    const auto seed = detail::mix_seed(7, k);
    const auto inst = transform_supply(detail::sweep_instance(seed, 6, 10));
    Rng rng(seed);
    const auto sel = detail::random_selection(inst, rng);
    const auto flow = maxflow_value(inst, sel);
    if (!flow) continue;
    const auto pr = compute_profile(inst, sel);
    ASSERT_EQ(pr.value, *flow) << detail::describe(sel);
    ASSERT_TRUE(pr.constant_min()) << detail::describe(sel);
    for (int p = 0; p < pr.size(); ++p) {
      EXPECT_EQ(pr.lambda[p] * pr.mu[p], 0);
      EXPECT_EQ(pr.lambda[p] - pr.mu[p], pr.m_u[p] - pr.m_d[p]);
    }
    ++compared;
  }
  EXPECT_GT(compared, 300);
}

TEST(MinCut, SuitePassesAndCatchesAnInjectedFault) {
  VerifyOptions opt;
  opt.equivalence_instances = 300;
  const auto good = verify_profile_oracle(opt);
  EXPECT_TRUE(good.pass) << good.first_failure;
  EXPECT_GT(good.checked, 300);
  opt.profile = faulty_profile;
  const auto bad = verify_profile_oracle(opt);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.failures, 0);
}
