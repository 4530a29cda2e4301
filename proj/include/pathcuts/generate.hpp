#pragma once

#include "pathcuts/instance.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace pathcuts {

// Portable draws on top of mt19937_64; the std distributions differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty integer range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do draw = engine_();
    while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  bool coin(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 engine_;
};

// Discrete uniform over the integers nearest to [lo, hi], floored at 1.
inline std::int64_t draw_scaled(Rng& rng, double lo, double hi) {
  auto a = std::max<std::int64_t>(1, std::llround(lo));
  auto b = std::max<std::int64_t>(a, std::llround(hi));
  return rng.uniform_int(a, b);
}

// Lot-sizing path with backlogging: one production arc per period.
inline PathInstance generate_lotsizing(int n, std::int64_t f, std::int64_t c, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (f <= 0 || c <= 0) throw std::invalid_argument("cost and capacity factors must be positive");
  Rng rng(seed);
  PathInstance inst;
  inst.n = n;
  for (int j = 0; j < n; ++j) inst.demand.push_back(rng.uniform_int(0, 30));
  double mean = 0;
  for (auto d : inst.demand) mean += static_cast<double>(d);
  mean /= n;
  for (int j = 1; j <= n; ++j) {
    std::int64_t cap = draw_scaled(rng, 0.75 * c * mean, 1.25 * c * mean);
    std::int64_t p = rng.uniform_int(1, 10);
    inst.arcs.push_back({j, j, ArcDirection::Incoming, cap, Rational(f * p), Rational(p), false});
  }
  for (int j = 1; j < n; ++j) {
    inst.fwd_cap.push_back(draw_scaled(rng, 1.0 * mean, 2.0 * mean));
    inst.bwd_cap.push_back(draw_scaled(rng, 0.3 * mean, 0.8 * mean));
    inst.fwd_cost.push_back(Rational(rng.uniform_int(1, 10)));
    inst.bwd_cost.push_back(Rational(rng.uniform_int(1, 20)));
  }
  inst.validate();
  return inst;
}

struct RandomShape {
  int n = 4;
  int max_arcs = 8;
  int min_arcs = 1;
  double outgoing_share = 0.3;
  std::int64_t max_demand = 12;
  std::int64_t min_demand = 0;
  std::int64_t max_capacity = 15;
  std::int64_t max_path_capacity = 12;
  std::int64_t max_cost = 9;
};

// Small random instances for oracle sweeps. Arc ids are 1..|E| in node order.
inline PathInstance generate_random(const RandomShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  PathInstance inst;
  inst.n = shape.n;
  for (int j = 0; j < shape.n; ++j) inst.demand.push_back(rng.uniform_int(shape.min_demand, shape.max_demand));
  for (int j = 1; j < shape.n; ++j) {
    inst.fwd_cap.push_back(rng.uniform_int(1, shape.max_path_capacity));
    inst.bwd_cap.push_back(rng.uniform_int(1, shape.max_path_capacity));
    inst.fwd_cost.push_back(Rational(rng.uniform_int(0, shape.max_cost)));
    inst.bwd_cost.push_back(Rational(rng.uniform_int(0, shape.max_cost)));
  }
  auto count = rng.uniform_int(shape.min_arcs, shape.max_arcs);
  std::vector<NonPathArc> arcs;
  for (int k = 0; k < count; ++k) {
    NonPathArc a;
    a.node = static_cast<int>(rng.uniform_int(1, shape.n));
    a.direction = rng.coin(shape.outgoing_share) ? ArcDirection::Outgoing : ArcDirection::Incoming;
    a.capacity = rng.uniform_int(1, shape.max_capacity);
    a.fixed_cost = Rational(rng.uniform_int(0, 4 * shape.max_cost));
    a.var_cost = Rational(rng.uniform_int(0, shape.max_cost));
    arcs.push_back(a);
  }
  std::stable_sort(arcs.begin(), arcs.end(), [](const NonPathArc& a, const NonPathArc& b) { return a.node < b.node; });
  for (std::size_t k = 0; k < arcs.size(); ++k) arcs[k].id = static_cast<int>(k) + 1;
  inst.arcs = std::move(arcs);
  inst.validate();
  return inst;
}

}  // namespace pathcuts
