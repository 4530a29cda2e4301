#pragma once

#include "pathcuts/instance.hpp"
#include "pathcuts/maxflow.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace pathcuts {

enum class CoefficientMode { Cover, Pack };

// Objective set (S+, L-) over the window [first, last]; S- is explicit, K- is every other outgoing arc.
struct ArcSelection {
  int first = 1;
  int last = 1;
  std::vector<int> s_plus;
  std::vector<int> s_minus;
  std::vector<int> l_minus;
  CoefficientMode mode = CoefficientMode::Cover;

  bool full_path(const PathInstance& inst) const { return first == 1 && last == inst.n; }
};

inline bool contains(const std::vector<int>& ids, int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); }

inline std::vector<int> window_arcs(const PathInstance& inst, int first, int last) {
  std::vector<int> ids;
  for (const auto& a : inst.arcs)
    if (a.node >= first && a.node <= last) ids.push_back(a.id);
  return ids;
}

inline void validate_selection(const PathInstance& inst, const ArcSelection& sel) {
  if (sel.first < 1 || sel.last > inst.n || sel.first > sel.last) throw std::invalid_argument("window outside path");
  std::set<int> seen;
  auto check = [&](const std::vector<int>& ids, ArcDirection dir, const char* what) {
    for (int id : ids) {
      const auto& a = inst.arc(id);
      if (a.node < sel.first || a.node > sel.last)
        throw std::invalid_argument(std::string(what) + " arc " + std::to_string(id) + " outside window");
      if (a.direction != dir) throw std::invalid_argument(std::string(what) + " arc " + std::to_string(id) + " has wrong direction");
      if (!seen.insert(id).second) throw std::invalid_argument("arc " + std::to_string(id) + " selected twice");
    }
  };
  check(sel.s_plus, ArcDirection::Incoming, "S+");
  check(sel.s_minus, ArcDirection::Outgoing, "S-");
  check(sel.l_minus, ArcDirection::Outgoing, "L-");
  for (const auto& a : inst.arcs)
    if (a.dummy_supply && a.node >= sel.first && a.node <= sel.last && !contains(sel.s_plus, a.id))
      throw std::invalid_argument("dummy supply arc " + std::to_string(a.id) + " must be in S+");
}

// Forward and backward recursions over the window; index 0 is node `first`.
struct MinCutProfile {
  int first = 1;
  int last = 1;
  std::vector<std::int64_t> demand, u, b;  // u[p], b[p] join node first+p to first+p+1
  std::vector<std::int64_t> s_plus_cap, s_minus_cap;
  std::vector<std::int64_t> alpha_u, alpha_d, beta_u, beta_d;
  std::vector<std::int64_t> m_u, m_d;
  std::vector<std::int64_t> lambda, mu;
  std::int64_t value = 0;

  int size() const { return last - first + 1; }
  int index(int node) const {
    if (node < first || node > last) throw std::out_of_range("node outside profile window");
    return node - first;
  }
  std::int64_t lambda_at(int node) const { return lambda[index(node)]; }
  std::int64_t mu_at(int node) const { return mu[index(node)]; }

  bool constant_min() const {
    for (int p = 0; p < size(); ++p)
      if (std::min(m_u[p], m_d[p]) != value) return false;
    return true;
  }
};

// All inputs are indexed by window position; u and b have size-1 entries.
inline MinCutProfile profile_from_aggregates(int first, std::vector<std::int64_t> demand, std::vector<std::int64_t> u,
                                             std::vector<std::int64_t> b, std::vector<std::int64_t> s_plus_cap,
                                             std::vector<std::int64_t> s_minus_cap) {
  const int len = static_cast<int>(demand.size());
  MinCutProfile pr;
  pr.first = first;
  pr.last = first + len - 1;
  pr.alpha_u.assign(len, 0);
  pr.alpha_d.assign(len, 0);
  pr.beta_u.assign(len, 0);
  pr.beta_d.assign(len, 0);
  for (int p = 0; p < len; ++p) {
    if (demand[p] < 0) throw std::invalid_argument("negative demand in window; apply transform_supply first");
    std::int64_t prev_u = 0, prev_d = 0;
    if (p > 0) {
      prev_u = std::min(checked_add(pr.alpha_d[p - 1], u[p - 1]), pr.alpha_u[p - 1]);
      prev_d = std::min(pr.alpha_d[p - 1], checked_add(pr.alpha_u[p - 1], b[p - 1]));
    }
    pr.alpha_u[p] = checked_add(prev_u, s_plus_cap[p]);
    pr.alpha_d[p] = checked_add(checked_add(prev_d, demand[p]), s_minus_cap[p]);
  }
  for (int p = len - 1; p >= 0; --p) {
    std::int64_t next_u = 0, next_d = 0;
    if (p < len - 1) {
      next_u = std::min(pr.beta_u[p + 1], checked_add(pr.beta_d[p + 1], b[p]));
      next_d = std::min(checked_add(pr.beta_u[p + 1], u[p]), pr.beta_d[p + 1]);
    }
    pr.beta_u[p] = checked_add(next_u, s_plus_cap[p]);
    pr.beta_d[p] = checked_add(checked_add(next_d, demand[p]), s_minus_cap[p]);
  }
  pr.m_u.resize(len);
  pr.m_d.resize(len);
  pr.lambda.resize(len);
  pr.mu.resize(len);
  for (int p = 0; p < len; ++p) {
    pr.m_u[p] = pr.alpha_u[p] + pr.beta_u[p] - s_plus_cap[p];
    pr.m_d[p] = pr.alpha_d[p] + pr.beta_d[p] - demand[p] - s_minus_cap[p];
    pr.lambda[p] = pos_part(pr.m_u[p] - pr.m_d[p]);
    pr.mu[p] = pos_part(pr.m_d[p] - pr.m_u[p]);
  }
  pr.value = std::min(pr.m_u[0], pr.m_d[0]);
  pr.demand = std::move(demand);
  pr.u = std::move(u);
  pr.b = std::move(b);
  pr.s_plus_cap = std::move(s_plus_cap);
  pr.s_minus_cap = std::move(s_minus_cap);
  return pr;
}

inline MinCutProfile compute_profile(const PathInstance& inst, const ArcSelection& sel) {
  validate_selection(inst, sel);
  const int len = sel.last - sel.first + 1;
  std::vector<std::int64_t> demand(len), u(std::max(0, len - 1)), b(std::max(0, len - 1));
  std::vector<std::int64_t> sp(len, 0), sm(len, 0);
  for (int p = 0; p < len; ++p) demand[p] = inst.d(sel.first + p);
  for (int p = 0; p + 1 < len; ++p) {
    u[p] = inst.u(sel.first + p);
    b[p] = inst.b(sel.first + p);
  }
  for (int id : sel.s_plus) {
    const auto& a = inst.arc(id);
    sp[a.node - sel.first] = checked_add(sp[a.node - sel.first], a.capacity);
  }
  for (int id : sel.s_minus) {
    const auto& a = inst.arc(id);
    sm[a.node - sel.first] = checked_add(sm[a.node - sel.first], a.capacity);
  }
  return profile_from_aggregates(sel.first, std::move(demand), std::move(u), std::move(b), std::move(sp),
                                 std::move(sm));
}

// Arc attached to the window network: sources feed a node, sinks drain it.
struct TerminalArc {
  int node;
  std::int64_t capacity;
  bool fixed = false;  // flow pinned to capacity
};

// Max flow over the window with demand sinks; nullopt when fixed arcs cannot be honored.
inline std::optional<std::int64_t> window_value(const PathInstance& inst, int first, int last,
                                                const std::vector<TerminalArc>& sources,
                                                const std::vector<TerminalArc>& sinks) {
  const int len = last - first + 1;
  const int s = len, t = len + 1;
  FlowNetwork net(len + 2);
  for (int p = 0; p < len; ++p) {
    if (inst.d(first + p) < 0) throw std::invalid_argument("negative demand in window; apply transform_supply first");
    if (inst.d(first + p) > 0) net.add_edge(p, t, inst.d(first + p));
    if (p + 1 < len) {
      net.add_edge(p, p + 1, inst.u(first + p));
      net.add_edge(p + 1, p, inst.b(first + p));
    }
  }
  for (const auto& a : sources) net.add_edge(s, a.node - first, a.capacity, a.fixed ? a.capacity : 0);
  for (const auto& a : sinks) net.add_edge(a.node - first, t, a.capacity, a.fixed ? a.capacity : 0);
  return net.max_flow(s, t);
}

// Direct max-flow evaluation of v(S+, L-); independent of the recursions.
inline std::optional<std::int64_t> maxflow_value(const PathInstance& inst, const ArcSelection& sel) {
  validate_selection(inst, sel);
  std::vector<TerminalArc> sources, sinks;
  for (int id : sel.s_plus) {
    const auto& a = inst.arc(id);
    sources.push_back({a.node, a.capacity, a.dummy_supply});
  }
  for (int id : sel.s_minus) {
    const auto& a = inst.arc(id);
    sinks.push_back({a.node, a.capacity, false});
  }
  return window_value(inst, sel.first, sel.last, sources, sinks);
}

enum class MarginalSide { Drop, Add };

// Signed change of v when arc t leaves (Drop) or joins (Add) the objective set.
inline std::int64_t marginal(const PathInstance& inst, const ArcSelection& sel, const MinCutProfile& pr, int arc_id,
                             MarginalSide side) {
  const auto& a = inst.arc(arc_id);
  if (a.node < sel.first || a.node > sel.last) throw std::invalid_argument("arc outside window");
  const std::int64_t lam = pr.lambda_at(a.node), mu = pr.mu_at(a.node);
  const bool in_splus = contains(sel.s_plus, arc_id), in_sminus = contains(sel.s_minus, arc_id);
  const bool in_lminus = contains(sel.l_minus, arc_id);
  if (side == MarginalSide::Drop) {
    if (in_splus) {
      if (a.dummy_supply) throw std::invalid_argument("dummy supply arcs cannot leave S+");
      return pos_part(a.capacity - lam);
    }
    if (in_lminus) return -std::min(lam, a.capacity);
    throw std::invalid_argument("arc " + std::to_string(arc_id) + " is not in the objective set");
  }
  if (in_splus || in_lminus) throw std::invalid_argument("arc " + std::to_string(arc_id) + " is already in the objective set");
  if (a.incoming()) return std::min(a.capacity, mu);
  if (in_sminus) return -pos_part(a.capacity - mu);
  return 0;
}

inline std::int64_t marginal(const PathInstance& inst, const ArcSelection& sel, int arc_id, MarginalSide side) {
  return marginal(inst, sel, compute_profile(inst, sel), arc_id, side);
}

}  // namespace pathcuts
