#pragma once

#include "pathcuts/cuts.hpp"
#include "pathcuts/model.hpp"
#include "pathcuts/separation.hpp"
#include "pathcuts/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace pathcuts {

// Column layout of the LP relaxation: y by arc position, then x, then i_j, then r_j.
struct LpModel {
  struct Column {
    std::string name;
    double lb = 0;
    double ub = 0;
    double cost = 0;
    bool binary = false;
  };
  struct Row {
    SparseRow<double> coeffs;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0;
  };
  int n = 0;
  int arc_count = 0;
  std::vector<Column> columns;
  std::vector<Row> rows;

  int y_col(int pos) const { return pos; }
  int x_col(int pos) const { return arc_count + pos; }
  int i_col(int j) const { return 2 * arc_count + j - 1; }
  int r_col(int j) const { return 2 * arc_count + (n - 1) + j - 1; }

  FractionalPoint point(const std::vector<double>& v) const {
    FractionalPoint p;
    for (int t = 0; t < arc_count; ++t) {
      p.y.push_back(v[y_col(t)]);
      p.x.push_back(v[x_col(t)]);
    }
    for (int j = 1; j < n; ++j) {
      p.i.push_back(v[i_col(j)]);
      p.r.push_back(v[r_col(j)]);
    }
    return p;
  }

  Row row_for(const PathInstance& inst, const LinearInequality& cut) const {
    Row row;
    for (const auto& [id, c] : cut.y) row.coeffs.push_back({y_col(inst.position(id)), to_double(c)});
    for (const auto& [id, c] : cut.x) row.coeffs.push_back({x_col(inst.position(id)), to_double(c)});
    for (const auto& [j, c] : cut.i) row.coeffs.push_back({i_col(j), to_double(c)});
    for (const auto& [j, c] : cut.r) row.coeffs.push_back({r_col(j), to_double(c)});
    row.sense = RowSense::LessEqual;
    row.rhs = to_double(cut.rhs);
    return row;
  }
};

// Flow balance and variable upper bounds. Arcs listed in always_open get x fixed at 1.
inline LpModel build_lp_model(const PathInstance& inst, const std::vector<int>& always_open = {}) {
  LpModel model;
  model.n = inst.n;
  model.arc_count = static_cast<int>(inst.arcs.size());
  for (const auto& a : inst.arcs) {
    double c = static_cast<double>(a.capacity);
    model.columns.push_back({"y" + std::to_string(a.id), a.dummy_supply ? c : 0.0, c, to_double(a.var_cost), false});
  }
  for (const auto& a : inst.arcs) {
    bool pinned = a.dummy_supply || contains(always_open, a.id);
    model.columns.push_back({"x" + std::to_string(a.id), pinned ? 1.0 : 0.0, 1.0, to_double(a.fixed_cost), true});
  }
  for (int j = 1; j < inst.n; ++j)
    model.columns.push_back({"i" + std::to_string(j), 0.0, static_cast<double>(inst.u(j)), to_double(inst.fwd_cost[j - 1]), false});
  for (int j = 1; j < inst.n; ++j)
    model.columns.push_back({"r" + std::to_string(j), 0.0, static_cast<double>(inst.b(j)), to_double(inst.bwd_cost[j - 1]), false});
  for (int j = 1; j <= inst.n; ++j) {
    LpModel::Row row;
    for (int t = 0; t < model.arc_count; ++t)
      if (inst.arcs[t].node == j) row.coeffs.push_back({model.y_col(t), inst.arcs[t].incoming() ? 1.0 : -1.0});
    if (j > 1) {
      row.coeffs.push_back({model.i_col(j - 1), 1.0});
      row.coeffs.push_back({model.r_col(j - 1), -1.0});
    }
    if (j < inst.n) {
      row.coeffs.push_back({model.i_col(j), -1.0});
      row.coeffs.push_back({model.r_col(j), 1.0});
    }
    row.sense = RowSense::Equal;
    row.rhs = static_cast<double>(inst.d(j));
    model.rows.push_back(std::move(row));
  }
  for (int t = 0; t < model.arc_count; ++t)
    model.rows.push_back({{{model.y_col(t), 1.0}, {model.x_col(t), -static_cast<double>(inst.arcs[t].capacity)}},
                          RowSense::LessEqual,
                          0.0});
  return model;
}

inline Simplex<double> load_simplex(const LpModel& model) {
  Simplex<double> lp;
  for (const auto& c : model.columns) lp.add_column(c.lb, c.ub, c.cost);
  for (const auto& r : model.rows) lp.add_row(r.coeffs, r.sense, r.rhs);
  return lp;
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0;
  std::vector<double> values;
};

inline LpSolution solve_lp(const LpModel& model) {
  auto lp = load_simplex(model);
  LpSolution out;
  out.status = lp.solve();
  if (out.status == LpStatus::Optimal) {
    out.values = lp.primal();
    out.objective = lp.objective();
  }
  return out;
}

enum class CutArm { Spi, Mspi, None, CpxLike };

inline const char* to_string(CutArm arm) {
  switch (arm) {
    case CutArm::Spi: return "spi";
    case CutArm::Mspi: return "mspi";
    case CutArm::None: return "none";
    case CutArm::CpxLike: return "cpxlike";
  }
  return "?";
}

inline CutArm parse_cut_arm(const std::string& s) {
  if (s == "spi") return CutArm::Spi;
  if (s == "mspi") return CutArm::Mspi;
  if (s == "none") return CutArm::None;
  if (s == "cpxlike") return CutArm::CpxLike;
  throw std::invalid_argument("unknown cut mode '" + s + "'");
}

struct BranchAndCutConfig {
  CutArm cuts = CutArm::Spi;
  SeparationConfig separation;
  int cut_rounds = 50;
  int cut_depth = 0;
  double time_limit = 3600.0;
  std::int64_t node_limit = -1;  // negative means unlimited
  int purge_after = 5;           // rounds a cut may stay slack before it is dropped
  bool keep_cuts = false;
  bool root_only = false;
  bool rounding = false;  // open-and-resolve incumbent heuristic at the root and every 25 nodes
};

struct BranchAndCutReport {
  std::string status = "unknown";  // optimal, infeasible, time_limit, node_limit, root_only
  double z_init = std::numeric_limits<double>::quiet_NaN();
  double z_root = std::numeric_limits<double>::quiet_NaN();
  double z_ub = std::numeric_limits<double>::infinity();
  double z_lb = -std::numeric_limits<double>::infinity();
  double init_gap = std::numeric_limits<double>::quiet_NaN();
  double root_gap = std::numeric_limits<double>::quiet_NaN();
  double gap_imp = std::numeric_limits<double>::quiet_NaN();
  double end_gap = std::numeric_limits<double>::quiet_NaN();
  std::int64_t cuts_added = 0;
  std::int64_t nodes_explored = 0;
  int cut_rounds = 0;
  double wall_time = 0;
  std::optional<FractionalPoint> incumbent;
  std::optional<FractionalPoint> root_point;
  std::vector<LinearInequality> cuts;
};

// Gap fields from the report's bounds and a reference upper bound.
inline void compute_gaps(BranchAndCutReport& rep, double z_ub) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!std::isfinite(z_ub) || z_ub == 0) {
    rep.init_gap = rep.root_gap = rep.gap_imp = rep.end_gap = nan;
    return;
  }
  rep.init_gap = 100.0 * (z_ub - rep.z_init) / z_ub;
  rep.root_gap = 100.0 * (z_ub - rep.z_root) / z_ub;
  rep.gap_imp = rep.init_gap > 1e-9 ? 100.0 * (rep.init_gap - rep.root_gap) / rep.init_gap : nan;
  rep.end_gap = std::isfinite(rep.z_lb) ? (z_ub - rep.z_lb) / z_ub : nan;
}

namespace detail {

inline SeparationConfig arm_separation(const BranchAndCutConfig& cfg) {
  SeparationConfig sep = cfg.separation;
  sep.merged = cfg.cuts == CutArm::Mspi;
  if (cfg.cuts == CutArm::CpxLike) {
    sep.merged = true;
    sep.max_path_len = 1;
  }
  return sep;
}

// One separation round on the current LP; returns the number of rows added.
inline int separate_into(const PathInstance& inst, const LpModel& model, Simplex<double>& lp,
                         const SeparationConfig& sep, std::vector<LinearInequality>* keep) {
  auto pt = model.point(lp.primal());
  auto found = separate(inst, pt, sep);
  for (auto& sc : found) {
    auto row = model.row_for(inst, sc.cut);
    lp.add_row(row.coeffs, row.sense, row.rhs);
    if (keep) keep->push_back(std::move(sc.cut));
  }
  return static_cast<int>(found.size());
}

// Drops cut rows that have been slack for too long. Rows below first_cut_row are the formulation.
inline void purge_slack(Simplex<double>& lp, int first_cut_row, std::vector<int>& slack_rounds, int limit) {
  slack_rounds.resize(lp.row_count() - first_cut_row, 0);
  std::vector<int> drop;
  for (int r = first_cut_row; r < lp.row_count(); ++r) {
    int k = r - first_cut_row;
    double gap = std::fabs(lp.value(lp.column_count() + r));
    if (lp.slack_basic(r) && gap > 1e-6)
      ++slack_rounds[k];
    else
      slack_rounds[k] = 0;
    if (slack_rounds[k] >= limit) drop.push_back(r);
  }
  if (drop.empty()) return;
  std::vector<int> kept;
  for (int r = first_cut_row; r < lp.row_count(); ++r)
    if (std::find(drop.begin(), drop.end(), r) == drop.end()) kept.push_back(slack_rounds[r - first_cut_row]);
  lp.remove_rows(drop);
  slack_rounds = std::move(kept);
}

// Opens every arc with positive x, re-solves, then closes arcs left without flow. Returns a feasible x-integral LP.
inline std::optional<std::pair<double, std::vector<double>>> round_open(const LpModel& model, const Simplex<double>& base,
                                                                       const std::vector<double>& v) {
  Simplex<double> lp = base;
  std::vector<bool> open(model.arc_count);
  for (int t = 0; t < model.arc_count; ++t) open[t] = v[model.x_col(t)] > 1e-6;
  std::optional<std::pair<double, std::vector<double>>> best;
  for (int pass = 0; pass < 2; ++pass) {
    for (int t = 0; t < model.arc_count; ++t) {
      const double val = open[t] ? 1.0 : 0.0;
      lp.set_bounds(model.x_col(t), val, val);
    }
    if (lp.solve() != LpStatus::Optimal) break;
    auto sol = lp.primal();
    best = std::make_pair(lp.objective(), sol);
    bool changed = false;
    for (int t = 0; t < model.arc_count; ++t)
      if (open[t] && sol[model.y_col(t)] <= 1e-9) {
        open[t] = false;
        changed = true;
      }
    if (!changed) break;
  }
  return best;
}

inline int most_fractional(const LpModel& model, const std::vector<double>& v) {
  int best = -1;
  double best_frac = 1e-6;
  for (int t = 0; t < model.arc_count; ++t) {
    double x = v[model.x_col(t)];
    double frac = std::min(x - std::floor(x), std::ceil(x) - x);
    if (frac > best_frac + 1e-12) {
      best = t;
      best_frac = frac;
    }
  }
  return best;
}

}  // namespace detail

inline BranchAndCutReport branch_and_cut(const PathInstance& input, const BranchAndCutConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  const PathInstance inst = transform_supply(input);
  BranchAndCutReport rep;
  const auto model = build_lp_model(inst, check_a1(inst));
  auto lp = load_simplex(model);
  const int base_rows = lp.row_count();
  std::vector<int> slack_rounds;
  auto st = lp.solve();
  if (st == LpStatus::Infeasible) {
    rep.status = "infeasible";
    rep.wall_time = elapsed();
    return rep;
  }
  if (st != LpStatus::Optimal) throw std::runtime_error(std::string("root LP failed: ") + to_string(st));
  rep.z_init = lp.objective();

  const SeparationConfig sep = detail::arm_separation(cfg);
  auto cut_loop = [&](Simplex<double>& node_lp, std::vector<int>& tracker, bool count) {
    for (int round = 0; round < cfg.cut_rounds; ++round) {
      if (elapsed() > cfg.time_limit) break;
      int added = detail::separate_into(inst, model, node_lp, sep, cfg.keep_cuts ? &rep.cuts : nullptr);
      if (added == 0) break;
      if (count) {
        rep.cuts_added += added;
        ++rep.cut_rounds;
      }
      auto s = node_lp.solve();
      if (s != LpStatus::Optimal) throw std::runtime_error(std::string("LP failed after cuts: ") + to_string(s));
      detail::purge_slack(node_lp, base_rows, tracker, cfg.purge_after);
    }
  };
  const Simplex<double> plain = lp;
  auto try_rounding = [&](const std::vector<double>& v) {
    if (!cfg.rounding) return;
    auto found = detail::round_open(model, plain, v);
    if (found && found->first < rep.z_ub - 1e-9) {
      rep.z_ub = found->first;
      rep.incumbent = model.point(found->second);
    }
  };
  if (cfg.cuts != CutArm::None) cut_loop(lp, slack_rounds, true);
  rep.z_root = lp.objective();
  rep.root_point = model.point(lp.primal());
  try_rounding(lp.primal());

  struct Node {
    double bound;
    std::int64_t id;
    int depth;
    std::vector<std::pair<int, double>> fixings;  // x column, value
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::int64_t next_id = 0;
  open.push({rep.z_root, next_id++, 0, {}});
  const Simplex<double> root = lp;
  auto prune_tol = [](double ub) { return 1e-6 * std::max(1.0, std::fabs(ub)); };

  bool stopped = false;
  while (!open.empty()) {
    if (cfg.root_only && rep.nodes_explored > 0) {
      rep.status = "root_only";
      stopped = true;
      break;
    }
    if (elapsed() > cfg.time_limit) {
      rep.status = "time_limit";
      stopped = true;
      break;
    }
    if (cfg.node_limit >= 0 && rep.nodes_explored >= cfg.node_limit) {
      rep.status = "node_limit";
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= rep.z_ub - prune_tol(rep.z_ub)) continue;
    ++rep.nodes_explored;
    Simplex<double> node_lp = node.id == 0 ? lp : root;
    for (const auto& [col, val] : node.fixings) node_lp.set_bounds(col, val, val);
    auto s = node.id == 0 ? LpStatus::Optimal : node_lp.solve();
    if (s == LpStatus::Infeasible) continue;
    if (s != LpStatus::Optimal) throw std::runtime_error(std::string("node LP failed: ") + to_string(s));
    if (node.depth > 0 && node.depth <= cfg.cut_depth && cfg.cuts != CutArm::None) {
      std::vector<int> tracker;
      cut_loop(node_lp, tracker, true);
    }
    const double z = node_lp.objective();
    if (z >= rep.z_ub - prune_tol(rep.z_ub)) continue;
    auto v = node_lp.primal();
    if (rep.nodes_explored % 25 == 0) try_rounding(v);
    int branch = detail::most_fractional(model, v);
    if (branch < 0) {
      rep.z_ub = z;
      rep.incumbent = model.point(v);
      continue;
    }
    for (double val : {0.0, 1.0}) {
      Node child{z, next_id++, node.depth + 1, node.fixings};
      child.fixings.push_back({model.x_col(branch), val});
      open.push(std::move(child));
    }
  }
  if (!stopped) {
    rep.status = std::isfinite(rep.z_ub) ? "optimal" : "infeasible";
    rep.z_lb = rep.z_ub;
  } else {
    double lb = rep.z_ub;
    while (!open.empty()) {
      lb = std::min(lb, open.top().bound);
      open.pop();
    }
    rep.z_lb = lb;
  }
  compute_gaps(rep, rep.z_ub);
  rep.wall_time = elapsed();
  return rep;
}

struct MipOracleResult {
  bool feasible = false;
  Rational optimum{0};
  FeasiblePoint point;
};

// Exact optimum by enumerating x-patterns and solving each slice LP in rationals.
inline MipOracleResult mip_oracle(const PathInstance& input) {
  const PathInstance inst = transform_supply(input);
  if (inst.arcs.size() > 16) throw std::length_error("mip_oracle is limited to 16 arcs");
  SliceObjective<Rational> obj;
  for (const auto& a : inst.arcs) obj.y.push_back(a.var_cost);
  obj.i = inst.fwd_cost;
  obj.r = inst.bwd_cost;
  MipOracleResult best;
  for_each_pattern(inst, [&](const std::vector<bool>& open) {
    auto res = optimize_slice<Rational>(inst, open, obj, false);
    if (res.status != LpStatus::Optimal) return;
    Rational total = res.value;
    for (std::size_t t = 0; t < inst.arcs.size(); ++t)
      if (open[t] || inst.arcs[t].dummy_supply) total += inst.arcs[t].fixed_cost;
    if (!best.feasible || total < best.optimum) {
      best.feasible = true;
      best.optimum = total;
      best.point = res.point;
    }
  });
  return best;
}

}  // namespace pathcuts
