#include "common.hpp"
#include "pathcuts/generate.hpp"
#include "pathcuts/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

using namespace pathcuts;
using pathcuts::testing::two_node;

namespace {

void expect_same(const PathInstance& a, const PathInstance& b) {
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.demand, b.demand);
  EXPECT_EQ(a.fwd_cap, b.fwd_cap);
  EXPECT_EQ(a.bwd_cap, b.bwd_cap);
  EXPECT_EQ(a.fwd_cost, b.fwd_cost);
  EXPECT_EQ(a.bwd_cost, b.bwd_cost);
  ASSERT_EQ(a.arcs.size(), b.arcs.size());
  for (std::size_t k = 0; k < a.arcs.size(); ++k) {
    EXPECT_EQ(a.arcs[k].id, b.arcs[k].id);
    EXPECT_EQ(a.arcs[k].node, b.arcs[k].node);
    EXPECT_EQ(a.arcs[k].direction, b.arcs[k].direction);
    EXPECT_EQ(a.arcs[k].capacity, b.arcs[k].capacity);
    EXPECT_EQ(a.arcs[k].fixed_cost, b.arcs[k].fixed_cost);
    EXPECT_EQ(a.arcs[k].var_cost, b.arcs[k].var_cost);
    EXPECT_EQ(a.arcs[k].dummy_supply, b.arcs[k].dummy_supply);
  }
}

std::size_t columns(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

}  // namespace

TEST(Io, JsonRoundTrip) {
  auto inst = two_node();
  inst.arcs[0].var_cost = Rational(3, 4);
  inst.demand = {-1, 4};
  inst = transform_supply(inst);
  expect_same(inst, instance_from_json(json::parse(instance_to_string(inst))));
  const auto big = generate_lotsizing(30, 1000, 5, 9);
  expect_same(big, instance_from_json(instance_to_json(big)));
}

TEST(Io, FileRoundTripIsByteStable) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "pathcuts_io_test.json").string();
  const auto inst = generate_lotsizing(8, 100, 2, 1);
  write_instance(inst, path);
  const auto back = read_instance(path);
  expect_same(inst, back);
  EXPECT_EQ(instance_to_string(back), instance_to_string(inst));
  std::filesystem::remove(path);
}

TEST(Io, MalformedInputIsRejected) {
  auto base = instance_to_json(two_node());
  auto missing = base;
  missing.erase("demand");
  EXPECT_THROW(instance_from_json(missing), std::invalid_argument);
  auto bad_dir = base;
  bad_dir["arcs"][0]["dir"] = "sideways";
  EXPECT_THROW(instance_from_json(bad_dir), std::invalid_argument);
  auto bad_cost = base;
  bad_cost["fwd_cost"] = json::array();
  EXPECT_THROW(instance_from_json(bad_cost), std::invalid_argument);
  auto bad_cap = base;
  bad_cap["arcs"][1]["cap"] = 0;
  EXPECT_THROW(instance_from_json(bad_cap), std::invalid_argument);
  auto wrong_type = base;
  wrong_type["n"] = "two";
  EXPECT_THROW(instance_from_json(wrong_type), std::invalid_argument);
  EXPECT_THROW(read_instance("/nonexistent/pathcuts.json"), std::runtime_error);
}

TEST(Io, IntegerCostsAreAccepted) {
  auto j = instance_to_json(two_node());
  j["arcs"][0]["fixed_cost"] = 10;
  EXPECT_EQ(instance_from_json(j).arcs[0].fixed_cost, Rational(10));
}

TEST(Io, ProfileAndCutJson) {
  const auto inst = two_node();
  ArcSelection sel;
  sel.first = 1;
  sel.last = 2;
  sel.s_plus = {1, 2};
  const auto pj = profile_to_json(compute_profile(inst, sel));
  EXPECT_EQ(pj["value"], 5);
  EXPECT_EQ(pj["lambda"], json::array({2, 2}));
  const auto cj = cut_to_json(build_path_cover(inst, sel));
  EXPECT_EQ(cj["family"], "path_cover");
  EXPECT_EQ(parse_rational(cj["x"]["1"].get<std::string>()), Rational(-2));
  EXPECT_EQ(parse_rational(cj["rhs"].get<std::string>()), Rational(2));
  EXPECT_EQ(cj["window"], json::array({1, 2}));
}

TEST(Io, ReportSerialization) {
  BranchAndCutReport rep;
  rep.status = "optimal";
  rep.z_init = 1;
  rep.z_root = 2;
  rep.z_ub = 4;
  rep.z_lb = 4;
  compute_gaps(rep, 4);
  const auto j = report_to_json(rep);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_DOUBLE_EQ(j["gap_imp"].get<double>(), 100.0 / 3.0);
  EXPECT_EQ(columns(report_csv_header()), columns(report_csv_row(rep)));

  BranchAndCutReport empty;
  const auto ej = report_to_json(empty);
  EXPECT_TRUE(ej["z_ub"].is_null());
  EXPECT_TRUE(ej["gap_imp"].is_null());
  EXPECT_EQ(columns(report_csv_row(empty)), columns(report_csv_header()));
}
