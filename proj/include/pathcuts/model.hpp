#pragma once

#include "pathcuts/instance.hpp"
#include "pathcuts/simplex.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pathcuts {

// A point of the fixed-charge formulation. y and x are indexed by arc position, i and r by edge j-1.
template <class T>
struct Point {
  std::vector<T> y, x, i, r;

  static Point zeros(const PathInstance& inst) {
    Point p;
    p.y.assign(inst.arcs.size(), T(0));
    p.x.assign(inst.arcs.size(), T(0));
    p.i.assign(std::max(0, inst.n - 1), T(0));
    p.r.assign(std::max(0, inst.n - 1), T(0));
    return p;
  }
};

using FeasiblePoint = Point<Rational>;
using FractionalPoint = Point<double>;

inline FractionalPoint to_fractional(const FeasiblePoint& p) {
  FractionalPoint out;
  for (const auto& v : p.y) out.y.push_back(to_double(v));
  for (const auto& v : p.x) out.x.push_back(to_double(v));
  for (const auto& v : p.i) out.i.push_back(to_double(v));
  for (const auto& v : p.r) out.r.push_back(to_double(v));
  return out;
}

// Largest violation of the formulation's constraints (0 means feasible). Binary x is not enforced.
template <class T>
T constraint_violation(const PathInstance& inst, const Point<T>& p) {
  T worst(0);
  auto bump = [&](const T& v) {
    if (v > worst) worst = v;
  };
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const auto& a = inst.arcs[t];
    bump(T(-p.y[t]));
    bump(T(p.y[t] - T(a.capacity) * p.x[t]));
    bump(T(-p.x[t]));
    bump(T(p.x[t] - T(1)));
    if (a.dummy_supply) {
      bump(T(T(a.capacity) - p.y[t]));
      bump(T(T(1) - p.x[t]));
    }
  }
  for (int j = 1; j < inst.n; ++j) {
    bump(T(-p.i[j - 1]));
    bump(T(p.i[j - 1] - T(inst.u(j))));
    bump(T(-p.r[j - 1]));
    bump(T(p.r[j - 1] - T(inst.b(j))));
  }
  std::vector<T> balance(inst.n + 1, T(0));
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const auto& a = inst.arcs[t];
    balance[a.node] += a.incoming() ? p.y[t] : T(-p.y[t]);
  }
  for (int j = 1; j < inst.n; ++j) {
    balance[j] += p.r[j - 1] - p.i[j - 1];
    balance[j + 1] += p.i[j - 1] - p.r[j - 1];
  }
  for (int j = 1; j <= inst.n; ++j) {
    T gap = balance[j] - T(inst.d(j));
    bump(gap);
    bump(T(-gap));
  }
  return worst;
}

template <class T>
T point_cost(const PathInstance& inst, const Point<T>& p) {
  T z(0);
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const auto& a = inst.arcs[t];
    z += T(a.fixed_cost) * p.x[t] + T(a.var_cost) * p.y[t];
  }
  for (int j = 1; j < inst.n; ++j)
    z += T(inst.fwd_cost[j - 1]) * p.i[j - 1] + T(inst.bwd_cost[j - 1]) * p.r[j - 1];
  return z;
}

template <>
inline double point_cost<double>(const PathInstance& inst, const Point<double>& p) {
  double z = 0;
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const auto& a = inst.arcs[t];
    z += to_double(a.fixed_cost) * p.x[t] + to_double(a.var_cost) * p.y[t];
  }
  for (int j = 1; j < inst.n; ++j)
    z += to_double(inst.fwd_cost[j - 1]) * p.i[j - 1] + to_double(inst.bwd_cost[j - 1]) * p.r[j - 1];
  return z;
}

// Linear objective over the continuous variables of one x-pattern.
template <class T>
struct SliceObjective {
  std::vector<T> y, i, r;
};

template <class T>
struct SliceResult {
  LpStatus status = LpStatus::Infeasible;
  T value{0};
  Point<T> point;
};

// Optimizes over {(y,i,r) : flow balance, bounds, y_t = 0 for closed arcs}. Dummy arcs are pinned open and full.
template <class T>
SliceResult<T> optimize_slice(const PathInstance& inst, const std::vector<bool>& open, const SliceObjective<T>& obj,
                              bool maximize) {
  const int m = static_cast<int>(inst.arcs.size());
  Simplex<T> lp;
  auto sign = [&](const T& c) { return maximize ? T(-c) : c; };
  for (int t = 0; t < m; ++t) {
    const auto& a = inst.arcs[t];
    T cap(a.capacity);
    if (a.dummy_supply)
      lp.add_column(cap, cap, sign(obj.y[t]));
    else
      lp.add_column(T(0), open[t] ? cap : T(0), sign(obj.y[t]));
  }
  for (int j = 1; j < inst.n; ++j) lp.add_column(T(0), T(inst.u(j)), sign(obj.i[j - 1]));
  for (int j = 1; j < inst.n; ++j) lp.add_column(T(0), T(inst.b(j)), sign(obj.r[j - 1]));
  const int i0 = m, r0 = m + inst.n - 1;
  for (int j = 1; j <= inst.n; ++j) {
    SparseRow<T> row;
    for (int t = 0; t < m; ++t)
      if (inst.arcs[t].node == j) row.push_back({t, inst.arcs[t].incoming() ? T(1) : T(-1)});
    if (j > 1) {
      row.push_back({i0 + j - 2, T(1)});
      row.push_back({r0 + j - 2, T(-1)});
    }
    if (j < inst.n) {
      row.push_back({i0 + j - 1, T(-1)});
      row.push_back({r0 + j - 1, T(1)});
    }
    lp.add_row(row, RowSense::Equal, T(inst.d(j)));
  }
  SliceResult<T> out;
  out.status = lp.solve();
  if (out.status != LpStatus::Optimal) return out;
  auto v = lp.primal();
  out.point = Point<T>::zeros(inst);
  for (int t = 0; t < m; ++t) {
    out.point.y[t] = v[t];
    out.point.x[t] = (open[t] || inst.arcs[t].dummy_supply) ? T(1) : T(0);
  }
  for (int j = 1; j < inst.n; ++j) {
    out.point.i[j - 1] = v[i0 + j - 1];
    out.point.r[j - 1] = v[r0 + j - 1];
  }
  out.value = maximize ? T(-lp.objective()) : lp.objective();
  return out;
}

// Calls fn(open) for every open/closed pattern of the non-dummy arcs; dummy arcs stay open.
inline void for_each_pattern(const PathInstance& inst, const std::function<void(const std::vector<bool>&)>& fn) {
  std::vector<int> free_arcs;
  for (std::size_t t = 0; t < inst.arcs.size(); ++t)
    if (!inst.arcs[t].dummy_supply) free_arcs.push_back(static_cast<int>(t));
  if (free_arcs.size() > 24) throw std::length_error("too many arcs to enumerate x-patterns");
  std::vector<bool> open(inst.arcs.size(), true);
  const std::uint64_t total = std::uint64_t{1} << free_arcs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t k = 0; k < free_arcs.size(); ++k) open[free_arcs[k]] = (mask >> k) & 1U;
    fn(open);
  }
}

}  // namespace pathcuts
