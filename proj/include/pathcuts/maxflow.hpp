#pragma once

#include "pathcuts/rational.hpp"

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

namespace pathcuts {

// Edmonds-Karp on int64 capacities with optional lower bounds on edges.
class FlowNetwork {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  explicit FlowNetwork(int node_count) : adj_(node_count) {}

  int node_count() const { return static_cast<int>(adj_.size()); }

  int add_node() {
    adj_.emplace_back();
    return node_count() - 1;
  }

  // Returns the edge handle; flow() reports the total flow including the lower bound.
  int add_edge(int from, int to, std::int64_t cap, std::int64_t lower = 0) {
    if (lower < 0 || cap < lower) throw std::invalid_argument("edge bounds must satisfy 0 <= lower <= cap");
    int handle = static_cast<int>(edges_.size());
    edges_.push_back({to, cap - lower, 0, lower});
    adj_[from].push_back(handle);
    edges_.push_back({from, 0, 0, 0});
    adj_[to].push_back(handle + 1);
    if (lower > 0) has_lower_ = true;
    return handle;
  }

  std::int64_t flow(int handle) const { return edges_[handle].flow + edges_[handle].lower; }

  // Maximum s-t flow value honoring lower bounds; nullopt when no flow meets them.
  std::optional<std::int64_t> max_flow(int s, int t) {
    if (!has_lower_) return augment(s, t);
    const int base = node_count();
    std::vector<std::int64_t> excess(base, 0);
    for (int v = 0; v < base; ++v)
      for (int h : adj_[v])
        if ((h & 1) == 0 && edges_[h].lower > 0) {
          excess[edges_[h].to] = checked_add(excess[edges_[h].to], edges_[h].lower);
          excess[v] = checked_sub(excess[v], edges_[h].lower);
        }
    int ss = add_node(), tt = add_node();
    std::int64_t required = 0;
    for (int v = 0; v < base; ++v) {
      if (excess[v] > 0) {
        add_edge(ss, v, excess[v]);
        required = checked_add(required, excess[v]);
      } else if (excess[v] < 0) {
        add_edge(v, tt, -excess[v]);
      }
    }
    int back = add_edge(t, s, kInfinity);
    std::int64_t pushed = augment(ss, tt);
    std::int64_t base_value = edges_[back].flow;
    // Detach the auxiliary structure before the second phase.
    edges_[back].cap = edges_[back].flow = 0;
    edges_[back + 1].cap = edges_[back + 1].flow = 0;
    blocked_ = {ss, tt};
    if (pushed != required) return std::nullopt;
    return checked_add(base_value, augment(s, t));
  }

 private:
  struct Edge {
    int to;
    std::int64_t cap;  // capacity above the lower bound
    std::int64_t flow;
    std::int64_t lower;
  };

  std::int64_t residual(int h) const {
    // Reverse edges carry the negated flow of their partner.
    if (h & 1) return edges_[h ^ 1].flow;
    return edges_[h].cap - edges_[h].flow;
  }

  void push(int h, std::int64_t amount) {
    if (h & 1)
      edges_[h ^ 1].flow -= amount;
    else
      edges_[h].flow += amount;
  }

  std::int64_t augment(int s, int t) {
    std::int64_t total = 0;
    const int nn = node_count();
    std::vector<int> parent(nn);
    while (true) {
      std::fill(parent.begin(), parent.end(), -1);
      std::deque<int> queue{s};
      parent[s] = -2;
      while (!queue.empty() && parent[t] == -1) {
        int v = queue.front();
        queue.pop_front();
        for (int h : adj_[v]) {
          int w = edges_[h].to;
          if (parent[w] != -1 || residual(h) <= 0) continue;
          if (w == blocked_.first || w == blocked_.second) continue;
          parent[w] = h;
          queue.push_back(w);
        }
      }
      if (parent[t] == -1) break;
      std::int64_t bottleneck = kInfinity;
      for (int v = t; v != s; v = edges_[parent[v] ^ 1].to) bottleneck = std::min(bottleneck, residual(parent[v]));
      for (int v = t; v != s; v = edges_[parent[v] ^ 1].to) push(parent[v], bottleneck);
      total = checked_add(total, bottleneck);
    }
    return total;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  bool has_lower_ = false;
  std::pair<int, int> blocked_{-1, -1};
};

}  // namespace pathcuts
