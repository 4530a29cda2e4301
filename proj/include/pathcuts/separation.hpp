#pragma once

#include "pathcuts/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pathcuts {

// Internal path capacities of the window become large enough never to bind.
inline PathInstance merged_mode(const PathInstance& inst, int first, int last) {
  std::int64_t big = 1;
  for (int j = 1; j <= inst.n; ++j) big = checked_add(big, inst.d(j) > 0 ? inst.d(j) : -inst.d(j));
  for (const auto& a : inst.arcs) big = checked_add(big, a.capacity);
  PathInstance out = inst;
  for (int j = first; j < last; ++j) {
    out.fwd_cap[j - 1] = big;
    out.bwd_cap[j - 1] = big;
  }
  return out;
}

// Score used to rank incoming arcs for S+; larger is more attractive.
using KnapsackScore = std::function<double(const NonPathArc&, double y, double x)>;

inline double default_knapsack_score(const NonPathArc& a, double y, double x) {
  const double c = static_cast<double>(a.capacity);
  return (y - c * (1.0 - x)) / c;
}

struct SeparationConfig {
  double max_path_frac = 0.75;
  int max_path_len = 0;  // overrides max_path_frac when positive
  double eps = 1e-6;
  int max_cuts = 200;
  bool merged = false;  // single-node coefficients over each window
  bool local_search = true;  // scan greedy prefixes and improve S+ by single-arc toggles
  KnapsackScore score = default_knapsack_score;

  int window_limit(int n) const {
    if (max_path_len > 0) return std::min(n, max_path_len);
    return std::clamp(static_cast<int>(std::ceil(max_path_frac * n - 1e-9)), 1, n);
  }
};

// Candidate incoming arcs of a window in greedy order: dummies first, then by descending score.
inline std::vector<int> knapsack_order(const PathInstance& inst, int first, int last, const FractionalPoint& pt,
                                       const KnapsackScore& score = default_knapsack_score) {
  struct Cand {
    int pos;
    double score;
  };
  std::vector<int> order;
  std::vector<Cand> cands;
  for (std::size_t p = 0; p < inst.arcs.size(); ++p) {
    const auto& a = inst.arcs[p];
    if (!a.incoming() || a.node < first || a.node > last) continue;
    if (a.dummy_supply) {
      order.push_back(a.id);
      continue;
    }
    if (pt.x[p] <= 1e-9 && pt.y[p] <= 1e-9) continue;
    cands.push_back({static_cast<int>(p), score(a, pt.y[p], pt.x[p])});
  }
  std::sort(cands.begin(), cands.end(), [&](const Cand& l, const Cand& r) {
    if (l.score != r.score) return l.score > r.score;
    const auto& a = inst.arcs[l.pos];
    const auto& b = inst.arcs[r.pos];
    if (a.capacity != b.capacity) return a.capacity > b.capacity;
    return a.id < b.id;
  });
  for (const auto& c : cands) order.push_back(inst.arcs[c.pos].id);
  return order;
}

// Greedy S+ for a window: the shortest prefix of knapsack_order whose capacity exceeds the window demand.
inline std::vector<int> knapsack_select(const PathInstance& inst, int first, int last, const FractionalPoint& pt,
                                        const KnapsackScore& score = default_knapsack_score) {
  const std::int64_t demand = inst.demand_sum(first, last);
  std::vector<int> chosen;
  std::int64_t cap = 0;
  for (int id : knapsack_order(inst, first, last, pt, score)) {
    if (cap > demand && !inst.arc(id).dummy_supply) break;
    chosen.push_back(id);
    cap = checked_add(cap, inst.arc(id).capacity);
  }
  return chosen;
}

struct SeparatedCut {
  LinearInequality cut;
  double violation;
};

namespace detail {

// Window data for evaluating many S+ candidates without rebuilding cuts.
class WindowSearch {
 public:
  WindowSearch(const PathInstance& inst, const PathInstance& coef_inst, int first, int last, const FractionalPoint& pt)
      : inst_(inst), coef_(coef_inst), pt_(pt), first_(first), last_(last) {
    const int len = last - first + 1;
    demand_.resize(len);
    u_.assign(std::max(0, len - 1), 0);
    b_.assign(std::max(0, len - 1), 0);
    for (int p = 0; p < len; ++p) demand_[p] = coef_.d(first + p);
    for (int p = 0; p + 1 < len; ++p) {
      u_[p] = coef_.u(first + p);
      b_[p] = coef_.b(first + p);
    }
    total_demand_ = inst.demand_sum(first, last);
    for (std::size_t p = 0; p < inst.arcs.size(); ++p) {
      const auto& a = inst.arcs[p];
      if (a.node < first || a.node > last) continue;
      if (a.incoming())
        in_pos_.push_back(static_cast<int>(p));
      else
        out_pos_.push_back(static_cast<int>(p));
    }
  }

  // S+ given as arc positions.
  MinCutProfile profile(const std::vector<int>& s_plus) const {
    std::vector<std::int64_t> sp(demand_.size(), 0), sm(demand_.size(), 0);
    for (int p : s_plus) sp[inst_.arcs[p].node - first_] += inst_.arcs[p].capacity;
    return profile_from_aggregates(first_, demand_, u_, b_, std::move(sp), std::move(sm));
  }

  bool cover(const std::vector<int>& s_plus, const MinCutProfile& pr) const { return pr.value == total_demand_; }

  bool pack(const std::vector<int>& s_plus, const MinCutProfile& pr) const {
    std::int64_t cap = 0;
    for (int p : s_plus) cap += inst_.arcs[p].capacity;
    return pr.value == cap;
  }

  // Violation of the cover inequality with L- chosen by the lambda rule; mirrors cover_inequality.
  double cover_violation(const std::vector<int>& s_plus, const MinCutProfile& pr) const {
    double v = -static_cast<double>(total_demand_);
    for (int p : s_plus) {
      const auto& a = inst_.arcs[p];
      const double coef = static_cast<double>(pos_part(a.capacity - pr.lambda_at(a.node)));
      v += pt_.y[p] + coef * (1.0 - pt_.x[p]);
    }
    for (int p : out_pos_) {
      const auto& a = inst_.arcs[p];
      const std::int64_t lam = pr.lambda_at(a.node);
      if (in_l_minus(p, lam))
        v -= static_cast<double>(std::min(a.capacity, lam)) * pt_.x[p];
      else
        v -= pt_.y[p];
    }
    v -= boundary_out();
    return v;
  }

  // Violation of the pack inequality (S- empty); mirrors pack_inequality.
  double pack_violation(const std::vector<int>& s_plus, const MinCutProfile& pr) const {
    double v = 0;
    for (int p : in_pos_) {
      const auto& a = inst_.arcs[p];
      v += pt_.y[p];
      if (std::find(s_plus.begin(), s_plus.end(), p) == s_plus.end())
        v -= static_cast<double>(std::min(a.capacity, pr.mu_at(a.node))) * pt_.x[p];
      else
        v -= static_cast<double>(a.capacity);
    }
    for (int p : out_pos_) v -= pt_.y[p];
    v -= boundary_out();
    if (first_ > 1) v += pt_.i[first_ - 2] - static_cast<double>(std::min(coef_.u(first_ - 1), pr.mu_at(first_)));
    if (last_ < inst_.n) v += pt_.r[last_ - 1] - static_cast<double>(std::min(coef_.b(last_), pr.mu_at(last_)));
    return v;
  }

  bool in_l_minus(int p, std::int64_t lam) const {
    return static_cast<double>(lam) * pt_.x[p] < pt_.y[p] && lam < inst_.arcs[p].capacity;
  }

  ArcSelection selection(const std::vector<int>& s_plus) const {
    ArcSelection sel;
    sel.first = first_;
    sel.last = last_;
    for (int p : s_plus) sel.s_plus.push_back(inst_.arcs[p].id);
    return sel;
  }

  const std::vector<int>& out_positions() const { return out_pos_; }

 private:
  double boundary_out() const {
    double v = 0;
    if (first_ > 1) v += pt_.r[first_ - 2];
    if (last_ < inst_.n) v += pt_.i[last_ - 1];
    return v;
  }

  const PathInstance& inst_;
  const PathInstance& coef_;
  const FractionalPoint& pt_;
  int first_, last_;
  std::vector<std::int64_t> demand_, u_, b_;
  std::int64_t total_demand_ = 0;
  std::vector<int> in_pos_, out_pos_;
};

// First-improvement toggling of single arcs while the selection keeps its cover/pack property.
template <class Keeps, class Score>
double improve_selection(const WindowSearch& ws, std::vector<int>& s_plus, const std::vector<int>& movable, double best,
                         Keeps keeps, Score score, int max_moves) {
  for (int moves = 0; moves < max_moves; ++moves) {
    bool improved = false;
    for (int p : movable) {
      std::vector<int> trial = s_plus;
      auto it = std::find(trial.begin(), trial.end(), p);
      if (it == trial.end())
        trial.push_back(p);
      else
        trial.erase(it);
      const MinCutProfile pr = ws.profile(trial);
      if (!keeps(trial, pr)) continue;
      const double v = score(trial, pr);
      if (v > best + 1e-9) {
        best = v;
        s_plus = std::move(trial);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return best;
}

inline void consider_window(const PathInstance& inst, const PathInstance& coef_inst, int first, int last,
                            const FractionalPoint& pt, const SeparationConfig& cfg,
                            std::vector<SeparatedCut>& out) {
  auto keep = [&](LinearInequality&& cut, CutFamily family) {
    cut.family = family;
    double viol = cut.violation(inst, pt);
    if (viol > cfg.eps) out.push_back({std::move(cut), viol});
  };
  auto emit_cover = [&](ArcSelection sel, const MinCutProfile& pr) {
    for (std::size_t p = 0; p < inst.arcs.size(); ++p) {
      const auto& a = inst.arcs[p];
      if (a.incoming() || a.node < first || a.node > last) continue;
      std::int64_t lam = pr.lambda_at(a.node);
      if (static_cast<double>(lam) * pt.x[p] < pt.y[p] && lam < a.capacity) sel.l_minus.push_back(a.id);
    }
    sel.mode = CoefficientMode::Cover;
    keep(detail::cover_inequality(coef_inst, sel, [&](int node) { return pr.lambda_at(node); }),
         cfg.merged ? CutFamily::FlowCover : CutFamily::PathCover);
  };
  auto emit_pack = [&](ArcSelection sel, const MinCutProfile& pr) {
    sel.mode = CoefficientMode::Pack;
    keep(detail::pack_inequality(coef_inst, sel, [&](int node) { return pr.mu_at(node); }),
         cfg.merged ? CutFamily::FlowPack : CutFamily::PathPack);
  };
  if (!cfg.local_search) {
    ArcSelection sel;
    sel.first = first;
    sel.last = last;
    sel.s_plus = knapsack_select(inst, first, last, pt, cfg.score);
    const MinCutProfile pr = compute_profile(coef_inst, sel);
    if (is_path_cover(coef_inst, sel, pr))
      emit_cover(sel, pr);
    else if (is_path_pack(coef_inst, sel, pr))
      emit_pack(sel, pr);
    return;
  }
  const WindowSearch ws(inst, coef_inst, first, last, pt);
  std::vector<int> order, movable;
  for (int id : knapsack_order(inst, first, last, pt, cfg.score)) {
    const int p = inst.position(id);
    order.push_back(p);
    if (!inst.arcs[p].dummy_supply) movable.push_back(p);
  }
  std::size_t start = order.size() - movable.size();
  std::optional<std::vector<int>> cover_sel, pack_sel;
  for (std::size_t k = start; k <= order.size(); ++k) {
    std::vector<int> s_plus(order.begin(), order.begin() + k);
    const MinCutProfile pr = ws.profile(s_plus);
    if (ws.cover(s_plus, pr)) {
      cover_sel = std::move(s_plus);
      break;
    }
    if (k > start && ws.pack(s_plus, pr)) pack_sel = std::move(s_plus);
  }
  const int max_moves = 2 * static_cast<int>(movable.size()) + 2;
  if (cover_sel) {
    auto keeps = [&](const std::vector<int>& s, const MinCutProfile& pr) { return ws.cover(s, pr); };
    auto score = [&](const std::vector<int>& s, const MinCutProfile& pr) { return ws.cover_violation(s, pr); };
    const MinCutProfile pr0 = ws.profile(*cover_sel);
    improve_selection(ws, *cover_sel, movable, score(*cover_sel, pr0), keeps, score, max_moves);
    emit_cover(ws.selection(*cover_sel), ws.profile(*cover_sel));
  }
  if (pack_sel) {
    auto keeps = [&](const std::vector<int>& s, const MinCutProfile& pr) { return !s.empty() && ws.pack(s, pr); };
    auto score = [&](const std::vector<int>& s, const MinCutProfile& pr) { return ws.pack_violation(s, pr); };
    const MinCutProfile pr0 = ws.profile(*pack_sel);
    improve_selection(ws, *pack_sel, movable, score(*pack_sel, pr0), keeps, score, max_moves);
    emit_pack(ws.selection(*pack_sel), ws.profile(*pack_sel));
  }
}

}  // namespace detail

// Scans windows by increasing length and returns violated cuts, strongest first, deduplicated.
inline std::vector<SeparatedCut> separate(const PathInstance& inst, const FractionalPoint& pt,
                                          const SeparationConfig& cfg) {
  std::vector<SeparatedCut> found;
  const int limit = cfg.window_limit(inst.n);
  for (int len = 1; len <= limit; ++len) {
    for (int first = 1; first + len - 1 <= inst.n; ++first) {
      const int last = first + len - 1;
      if (cfg.merged && len > 1) {
        PathInstance merged = merged_mode(inst, first, last);
        detail::consider_window(inst, merged, first, last, pt, cfg, found);
      } else {
        detail::consider_window(inst, inst, first, last, pt, cfg, found);
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const SeparatedCut& a, const SeparatedCut& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.cut.selection.first != b.cut.selection.first) return a.cut.selection.first < b.cut.selection.first;
    return a.cut.selection.last < b.cut.selection.last;
  });
  std::vector<SeparatedCut> out;
  std::set<std::string> seen;
  for (auto& c : found) {
    if (static_cast<int>(out.size()) >= cfg.max_cuts) break;
    if (!seen.insert(normalized_key(c.cut)).second) continue;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pathcuts
