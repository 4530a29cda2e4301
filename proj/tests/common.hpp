#pragma once

#include "pathcuts/instance.hpp"

namespace pathcuts::testing {

// Two nodes, one production arc each; hand-checked profile values live in test_mincut.cpp.
inline PathInstance two_node() {
  PathInstance inst;
  inst.n = 2;
  inst.demand = {3, 2};
  inst.fwd_cap = {4};
  inst.bwd_cap = {2};
  inst.fwd_cost = {Rational(1)};
  inst.bwd_cost = {Rational(2)};
  inst.arcs = {{1, 1, ArcDirection::Incoming, 4, Rational(10), Rational(1), false},
               {2, 2, ArcDirection::Incoming, 3, Rational(8), Rational(2), false}};
  return inst;
}

inline NonPathArc arc(int id, int node, bool incoming, std::int64_t cap) {
  return {id, node, incoming ? ArcDirection::Incoming : ArcDirection::Outgoing, cap, Rational(1), Rational(1), false};
}

// Single node with the given demand and incoming capacities (ids 1..k).
inline PathInstance single_node(std::int64_t demand, std::vector<std::int64_t> caps) {
  PathInstance inst;
  inst.n = 1;
  inst.demand = {demand};
  int id = 0;
  for (auto c : caps) inst.arcs.push_back(arc(++id, 1, true, c));
  return inst;
}

}  // namespace pathcuts::testing
