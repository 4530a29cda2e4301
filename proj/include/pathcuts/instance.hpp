#pragma once

#include "pathcuts/maxflow.hpp"
#include "pathcuts/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathcuts {

enum class ArcDirection { Incoming, Outgoing };

struct NonPathArc {
  int id = 0;
  int node = 1;  // 1-based path position
  ArcDirection direction = ArcDirection::Incoming;
  std::int64_t capacity = 0;
  Rational fixed_cost{0};
  Rational var_cost{0};
  bool dummy_supply = false;  // fixed-flow arc standing in for a negative demand

  bool incoming() const { return direction == ArcDirection::Incoming; }
};

// Path nodes 1..n; forward arc j carries i_j from j to j+1, backward arc j carries r_j from j+1 to j.
struct PathInstance {
  int n = 0;
  std::vector<std::int64_t> demand;
  std::vector<std::int64_t> fwd_cap;
  std::vector<std::int64_t> bwd_cap;
  std::vector<Rational> fwd_cost;
  std::vector<Rational> bwd_cost;
  std::vector<NonPathArc> arcs;

  std::int64_t d(int j) const { return demand.at(j - 1); }
  std::int64_t u(int j) const { return (j >= 1 && j < n) ? fwd_cap[j - 1] : 0; }
  std::int64_t b(int j) const { return (j >= 1 && j < n) ? bwd_cap[j - 1] : 0; }

  std::int64_t demand_sum(int k, int l) const {
    std::int64_t s = 0;
    for (int j = k; j <= l; ++j) s = checked_add(s, d(j));
    return s;
  }

  int position(int id) const {
    for (std::size_t p = 0; p < arcs.size(); ++p)
      if (arcs[p].id == id) return static_cast<int>(p);
    throw std::out_of_range("unknown arc id " + std::to_string(id));
  }
  const NonPathArc& arc(int id) const { return arcs[position(id)]; }
  bool has_arc(int id) const {
    return std::any_of(arcs.begin(), arcs.end(), [&](const NonPathArc& a) { return a.id == id; });
  }

  int max_arc_id() const {
    int m = 0;
    for (const auto& a : arcs) m = std::max(m, a.id);
    return m;
  }

  std::int64_t capacity_sum(ArcDirection dir) const {
    std::int64_t s = 0;
    for (const auto& a : arcs)
      if (a.direction == dir) s = checked_add(s, a.capacity);
    return s;
  }

  // Shape checks plus positive capacities.
  void validate() const {
    if (n < 1) throw std::invalid_argument("path must contain at least one node");
    auto want = static_cast<std::size_t>(n - 1);
    if (demand.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("demand vector must have n entries");
    if (fwd_cap.size() != want || bwd_cap.size() != want || fwd_cost.size() != want || bwd_cost.size() != want)
      throw std::invalid_argument("path arc vectors must have n-1 entries");
    for (int j = 1; j < n; ++j)
      if (u(j) <= 0 || b(j) <= 0)
        throw std::invalid_argument("path arc capacity must be positive at edge " + std::to_string(j));
    std::vector<int> ids;
    for (const auto& a : arcs) {
      if (a.node < 1 || a.node > n) throw std::invalid_argument("arc " + std::to_string(a.id) + " has node outside path");
      if (a.capacity <= 0) throw std::invalid_argument("arc " + std::to_string(a.id) + " has non-positive capacity");
      if (a.dummy_supply && !a.incoming()) throw std::invalid_argument("dummy supply arcs must be incoming");
      ids.push_back(a.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw std::invalid_argument("duplicate arc id");
  }
};

// General directed multigraph with a designated path.
struct GraphArc {
  int id = 0;
  int tail = 0;
  int head = 0;
  std::int64_t capacity = 0;
  Rational fixed_cost{0};
  Rational var_cost{0};
};

struct Multigraph {
  std::vector<int> nodes;
  std::map<int, std::int64_t> demand;  // missing entries mean zero
  std::vector<GraphArc> arcs;
  std::vector<int> path;  // node labels in path order
};

// Relaxation onto the path: one-endpoint arcs attach to their path node, long chords split in two.
inline PathInstance extract_path(const Multigraph& g) {
  if (g.path.empty()) throw std::invalid_argument("empty path");
  std::map<int, int> pos;
  for (std::size_t p = 0; p < g.path.size(); ++p)
    if (!pos.emplace(g.path[p], static_cast<int>(p) + 1).second) throw std::invalid_argument("path repeats a node");

  PathInstance inst;
  inst.n = static_cast<int>(g.path.size());
  for (int label : g.path) {
    auto it = g.demand.find(label);
    inst.demand.push_back(it == g.demand.end() ? 0 : it->second);
  }
  inst.fwd_cap.assign(inst.n - 1, 0);
  inst.bwd_cap.assign(inst.n - 1, 0);
  inst.fwd_cost.assign(inst.n - 1, Rational(0));
  inst.bwd_cost.assign(inst.n - 1, Rational(0));
  std::vector<bool> fwd_seen(inst.n, false), bwd_seen(inst.n, false);

  int next_id = 0;
  for (const auto& a : g.arcs) next_id = std::max(next_id, a.id);
  std::vector<NonPathArc> split_heads;

  for (const auto& a : g.arcs) {
    auto ti = pos.find(a.tail), hi = pos.find(a.head);
    bool t_on = ti != pos.end(), h_on = hi != pos.end();
    if (!t_on && !h_on) continue;
    if (t_on && h_on) {
      int p = ti->second, q = hi->second;
      if (p == q) continue;
      if (q == p + 1 || p == q + 1) {
        int edge = std::min(p, q);
        bool forward = q == p + 1;
        auto& cap = forward ? inst.fwd_cap[edge - 1] : inst.bwd_cap[edge - 1];
        auto& cost = forward ? inst.fwd_cost[edge - 1] : inst.bwd_cost[edge - 1];
        auto& seen = forward ? fwd_seen : bwd_seen;
        if (seen[edge] && cost != a.var_cost)
          throw std::invalid_argument("parallel path arcs with different costs are not supported");
        cap = checked_add(cap, a.capacity);
        cost = a.var_cost;
        seen[edge] = true;
        continue;
      }
      // Chord: the outgoing half keeps the costs, the incoming half is free.
      inst.arcs.push_back({a.id, p, ArcDirection::Outgoing, a.capacity, a.fixed_cost, a.var_cost, false});
      split_heads.push_back({++next_id, q, ArcDirection::Incoming, a.capacity, Rational(0), Rational(0), false});
      continue;
    }
    if (h_on)
      inst.arcs.push_back({a.id, hi->second, ArcDirection::Incoming, a.capacity, a.fixed_cost, a.var_cost, false});
    else
      inst.arcs.push_back({a.id, ti->second, ArcDirection::Outgoing, a.capacity, a.fixed_cost, a.var_cost, false});
  }
  inst.arcs.insert(inst.arcs.end(), split_heads.begin(), split_heads.end());
  inst.validate();
  return inst;
}

// Inverse of extract_path for instances without chords: a shared source and sink host the non-path arcs.
inline Multigraph to_multigraph(const PathInstance& inst) {
  Multigraph g;
  const int source = inst.n + 1, sink = inst.n + 2;
  for (int j = 1; j <= inst.n + 2; ++j) g.nodes.push_back(j);
  for (int j = 1; j <= inst.n; ++j) {
    g.path.push_back(j);
    g.demand[j] = inst.d(j);
  }
  for (const auto& a : inst.arcs) {
    if (a.incoming())
      g.arcs.push_back({a.id, source, a.node, a.capacity, a.fixed_cost, a.var_cost});
    else
      g.arcs.push_back({a.id, a.node, sink, a.capacity, a.fixed_cost, a.var_cost});
  }
  int id = inst.max_arc_id();
  for (int j = 1; j < inst.n; ++j) {
    g.arcs.push_back({++id, j, j + 1, inst.u(j), Rational(0), inst.fwd_cost[j - 1]});
    g.arcs.push_back({++id, j + 1, j, inst.b(j), Rational(0), inst.bwd_cost[j - 1]});
  }
  return g;
}

struct CapacityClip {
  int arc_id;
  std::int64_t before;
  std::int64_t after;
};

struct NormalizeResult {
  PathInstance instance;
  std::vector<CapacityClip> clips;
};

// Clips non-path capacities to the implied flow bounds; iterates to a fixpoint so the result is idempotent.
inline NormalizeResult normalize_assumptions(const PathInstance& input) {
  input.validate();
  NormalizeResult out{input, {}};
  PathInstance& inst = out.instance;
  std::map<int, std::int64_t> original;
  for (const auto& a : inst.arcs) original[a.id] = a.capacity;

  bool changed = true;
  while (changed) {
    changed = false;
    std::int64_t total_demand = inst.demand_sum(1, inst.n);
    std::int64_t out_total = inst.capacity_sum(ArcDirection::Outgoing);
    std::vector<std::int64_t> in_at(inst.n + 1, 0), out_at(inst.n + 1, 0);
    for (const auto& a : inst.arcs) (a.incoming() ? in_at : out_at)[a.node] += a.capacity;
    for (auto& a : inst.arcs) {
      if (a.dummy_supply) continue;
      int j = a.node;
      std::int64_t bound;
      if (a.incoming()) {
        bound = checked_add(checked_add(inst.b(j - 1), inst.u(j)), checked_add(pos_part(inst.d(j)), out_at[j]));
        bound = std::min(bound, checked_add(total_demand, out_total));
      } else {
        bound = checked_add(checked_add(inst.b(j), inst.u(j - 1)), checked_add(pos_part(-inst.d(j)), in_at[j]));
      }
      if (a.capacity > bound) {
        if (bound <= 0)
          throw std::domain_error("arc " + std::to_string(a.id) + " cannot carry flow; remove it before solving");
        a.capacity = bound;
        changed = true;
      }
    }
  }
  for (const auto& a : inst.arcs)
    if (a.capacity != original[a.id]) out.clips.push_back({a.id, original[a.id], a.capacity});
  return out;
}

// Feasibility of the flow-balance system with the given arcs closed.
inline bool flow_feasible(const PathInstance& inst, const std::vector<bool>& open) {
  const int s = 0, t = inst.n + 1;
  FlowNetwork net(inst.n + 2);
  for (int j = 1; j <= inst.n; ++j) {
    if (inst.d(j) > 0) net.add_edge(j, t, inst.d(j), inst.d(j));
    if (inst.d(j) < 0) net.add_edge(s, j, -inst.d(j), -inst.d(j));
    if (j < inst.n) {
      net.add_edge(j, j + 1, inst.u(j));
      net.add_edge(j + 1, j, inst.b(j));
    }
  }
  for (std::size_t p = 0; p < inst.arcs.size(); ++p) {
    const auto& a = inst.arcs[p];
    if (a.dummy_supply) {
      net.add_edge(s, a.node, a.capacity, a.capacity);
      continue;
    }
    if (!open[p]) continue;
    if (a.incoming())
      net.add_edge(s, a.node, a.capacity);
    else
      net.add_edge(a.node, t, a.capacity);
  }
  return net.max_flow(s, t).has_value();
}

// Arcs whose closure alone makes the instance infeasible.
inline std::vector<int> check_a1(const PathInstance& inst) {
  std::vector<int> failing;
  std::vector<bool> open(inst.arcs.size(), true);
  for (std::size_t p = 0; p < inst.arcs.size(); ++p) {
    if (inst.arcs[p].dummy_supply) continue;
    open[p] = false;
    if (!flow_feasible(inst, open)) failing.push_back(inst.arcs[p].id);
    open[p] = true;
  }
  return failing;
}

// Replaces each negative demand by a permanently open incoming arc carrying exactly the supply.
inline PathInstance transform_supply(const PathInstance& input) {
  PathInstance inst = input;
  int next_id = inst.max_arc_id();
  for (int j = 1; j <= inst.n; ++j) {
    if (inst.d(j) >= 0) continue;
    inst.arcs.push_back({++next_id, j, ArcDirection::Incoming, -inst.d(j), Rational(0), Rational(0), true});
    inst.demand[j - 1] = 0;
  }
  return inst;
}

}  // namespace pathcuts
