#pragma once

#include "pathcuts/cuts.hpp"
#include "pathcuts/mincut.hpp"
#include "pathcuts/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathcuts {

// Which defining identity made a node independent.
enum class IndependenceBranch { None, Up, Down, Both };

inline const char* to_string(IndependenceBranch b) {
  switch (b) {
    case IndependenceBranch::None: return "none";
    case IndependenceBranch::Up: return "u";
    case IndependenceBranch::Down: return "d";
    case IndependenceBranch::Both: return "u+d";
  }
  return "?";
}

// Flags are defined on interior nodes only: backward needs edge j-1 in the window, forward needs edge j.
struct IndependenceFlags {
  int first = 1;
  int last = 1;
  std::vector<IndependenceBranch> backward, forward;  // window-indexed
  bool remarks_consistent = true;                     // w_j identities for every fired branch

  bool backward_at(int node) const {
    return node >= first && node <= last && backward[node - first] != IndependenceBranch::None;
  }
  bool forward_at(int node) const {
    return node >= first && node <= last && forward[node - first] != IndependenceBranch::None;
  }
};

inline IndependenceFlags independence_from_profile(const MinCutProfile& pr) {
  IndependenceFlags f;
  f.first = pr.first;
  f.last = pr.last;
  const int len = pr.size();
  f.backward.assign(len, IndependenceBranch::None);
  f.forward.assign(len, IndependenceBranch::None);
  auto branch = [](bool up, bool down) {
    if (up && down) return IndependenceBranch::Both;
    if (up) return IndependenceBranch::Up;
    if (down) return IndependenceBranch::Down;
    return IndependenceBranch::None;
  };
  for (int p = 0; p < len; ++p) {
    const std::int64_t w = pr.m_u[p] - pr.m_d[p];
    if (p > 0) {
      bool up = pr.alpha_u[p] == pr.alpha_d[p - 1] + pr.u[p - 1] + pr.s_plus_cap[p];
      bool down = pr.alpha_d[p] == pr.alpha_u[p - 1] + pr.b[p - 1] + pr.demand[p] + pr.s_minus_cap[p];
      f.backward[p] = branch(up, down);
      if (up && w != pr.beta_u[p] - pr.beta_d[p] + pr.u[p - 1]) f.remarks_consistent = false;
      if (down && w != pr.beta_u[p] - pr.beta_d[p] - pr.b[p - 1]) f.remarks_consistent = false;
    }
    if (p + 1 < len) {
      bool up = pr.beta_u[p] == pr.beta_d[p + 1] + pr.b[p] + pr.s_plus_cap[p];
      bool down = pr.beta_d[p] == pr.beta_u[p + 1] + pr.u[p] + pr.demand[p] + pr.s_minus_cap[p];
      f.forward[p] = branch(up, down);
      if (up && w != pr.alpha_u[p] - pr.alpha_d[p] + pr.b[p]) f.remarks_consistent = false;
      if (down && w != pr.alpha_u[p] - pr.alpha_d[p] - pr.u[p]) f.remarks_consistent = false;
    }
  }
  return f;
}

inline IndependenceFlags independence_flags(const PathInstance& inst, const ArcSelection& sel) {
  return independence_from_profile(compute_profile(inst, sel));
}

struct ConditionVerdict {
  std::string label;
  bool holds = true;
  std::string detail;
};

struct ConditionReport {
  std::vector<ConditionVerdict> conditions;

  bool all() const {
    for (const auto& c : conditions)
      if (!c.holds) return false;
    return true;
  }
  const ConditionVerdict& at(const std::string& label) const {
    for (const auto& c : conditions)
      if (c.label == label) return c;
    throw std::out_of_range("no condition " + label);
  }
};

namespace detail {

inline void require_facet_setting(const PathInstance& inst, const ArcSelection& sel) {
  if (sel.first != 1 || sel.last != inst.n) throw std::invalid_argument("facet conditions need the window [1, n]");
  if (!sel.l_minus.empty()) throw std::invalid_argument("facet conditions need L- empty");
  for (int j = 1; j <= inst.n; ++j)
    if (inst.d(j) < 0) throw std::invalid_argument("facet conditions need non-negative demands");
}

// Shared adjacency conditions; `zero_at(i)` says node i contributes no nonzero x coefficient.
inline void adjacency_conditions(const IndependenceFlags& fl, int n, const std::function<bool(int)>& zero_at,
                                 ConditionReport& rep) {
  ConditionVerdict c3{"iii", true, ""}, c4{"iv", true, ""}, c5{"v", true, ""}, c6{"vi", true, ""};
  for (int j = 2; j <= n; ++j) {
    if (fl.forward_at(j) && fl.backward_at(j - 1)) {
      c3.holds = false;
      c3.detail += "forward " + std::to_string(j) + " & backward " + std::to_string(j - 1) + "; ";
    }
  }
  for (int j = 1; j <= n - 1; ++j) {
    if (fl.backward_at(j) && fl.forward_at(j + 1)) {
      c4.holds = false;
      c4.detail += "backward " + std::to_string(j) + " & forward " + std::to_string(j + 1) + "; ";
    }
  }
  for (int p = 2; p <= n; ++p) {
    bool zero = true;
    for (int i = p; i <= n && zero; ++i) zero = zero_at(i);
    if (zero && fl.forward_at(p - 1)) {
      c5.holds = false;
      c5.detail += "p=" + std::to_string(p) + "; ";
    }
  }
  for (int q = 1; q <= n - 1; ++q) {
    bool zero = true;
    for (int i = 1; i <= q && zero; ++i) zero = zero_at(i);
    if (zero && fl.backward_at(q + 1)) {
      c6.holds = false;
      c6.detail += "q=" + std::to_string(q) + "; ";
    }
  }
  for (auto* c : {&c3, &c4, &c5, &c6}) rep.conditions.push_back(*c);
}

}  // namespace detail

inline ConditionReport check_cover_necessary(const PathInstance& inst, const ArcSelection& sel) {
  detail::require_facet_setting(inst, sel);
  const auto pr = compute_profile(inst, sel);
  if (sel.mode != CoefficientMode::Cover || !is_path_cover(inst, sel, pr))
    throw std::invalid_argument("selection is not a path cover");
  ConditionReport rep;
  ConditionVerdict c1{"i", true, ""}, c2{"ii", false, ""};
  std::vector<bool> nonzero(inst.n + 1, false);
  for (int id : sel.s_plus) {
    const auto& a = inst.arc(id);
    if (a.dummy_supply) continue;
    std::int64_t rho = marginal(inst, sel, pr, id, MarginalSide::Drop);
    if (rho >= a.capacity) {
      c1.holds = false;
      c1.detail += "arc " + std::to_string(id) + "; ";
    }
    if (rho > 0) {
      c2.holds = true;
      nonzero[a.node] = true;
    }
  }
  rep.conditions = {c1, c2};
  detail::adjacency_conditions(independence_from_profile(pr), inst.n, [&](int i) { return !nonzero[i]; }, rep);
  return rep;
}

// Condition (ii) holds vacuously when S- is empty.
inline ConditionReport check_pack_necessary(const PathInstance& inst, const ArcSelection& sel) {
  detail::require_facet_setting(inst, sel);
  const auto pr = compute_profile(inst, sel);
  if (sel.mode != CoefficientMode::Pack || !is_path_pack(inst, sel, pr))
    throw std::invalid_argument("selection is not a path pack");
  ConditionReport rep;
  ConditionVerdict c1{"i", true, ""}, c2{"ii", sel.s_minus.empty(), sel.s_minus.empty() ? "S- empty" : ""};
  std::vector<bool> nonzero(inst.n + 1, false);
  for (const auto& a : inst.arcs) {
    if (a.incoming() && !contains(sel.s_plus, a.id)) {
      std::int64_t rho = marginal(inst, sel, pr, a.id, MarginalSide::Add);
      if (rho >= a.capacity) {
        c1.holds = false;
        c1.detail += "arc " + std::to_string(a.id) + "; ";
      }
      if (rho > 0) nonzero[a.node] = true;
    } else if (contains(sel.s_minus, a.id)) {
      std::int64_t rho = -marginal(inst, sel, pr, a.id, MarginalSide::Add);
      if (rho > 0) {
        c2.holds = true;
        nonzero[a.node] = true;
      }
    }
  }
  rep.conditions = {c1, c2};
  detail::adjacency_conditions(independence_from_profile(pr), inst.n, [&](int i) { return !nonzero[i]; }, rep);
  return rep;
}

enum class Verdict { Holds, Fails, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

struct SufficientReport {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  ConditionReport necessary;
  ConditionReport extra;
};

namespace detail {

inline std::string sufficient_shape(const PathInstance& inst) {
  std::vector<int> count(inst.n + 1, 0);
  for (const auto& a : inst.arcs) {
    if (!a.incoming()) return "outgoing arcs present";
    if (a.dummy_supply) return "dummy supply arcs present";
    ++count[a.node];
  }
  for (int j = 1; j <= inst.n; ++j) {
    if (inst.d(j) <= 0) return "node " + std::to_string(j) + " has non-positive demand";
    if (count[j] != 1) return "node " + std::to_string(j) + " does not have exactly one incoming arc";
  }
  return "";
}

inline bool cover_with(const PathInstance& inst, std::vector<int> s_plus) {
  ArcSelection sel;
  sel.first = 1;
  sel.last = inst.n;
  sel.s_plus = std::move(s_plus);
  return is_path_cover(inst, sel, compute_profile(inst, sel));
}

inline SufficientReport finish(SufficientReport rep) {
  rep.verdict = rep.necessary.all() && rep.extra.all() ? Verdict::Holds : Verdict::Fails;
  return rep;
}

}  // namespace detail

inline SufficientReport check_cover_sufficient(const PathInstance& inst, const ArcSelection& sel) {
  SufficientReport rep;
  rep.reason = detail::sufficient_shape(inst);
  if (!rep.reason.empty()) return rep;
  rep.necessary = check_cover_necessary(inst, sel);
  const auto pr = compute_profile(inst, sel);
  std::int64_t outside = 0;
  for (const auto& a : inst.arcs)
    if (!contains(sel.s_plus, a.id)) outside += a.capacity;
  ConditionVerdict s1{"i", true, ""}, s2{"ii", true, ""};
  for (int id : sel.s_plus) {
    const auto& a = inst.arc(id);
    std::int64_t coef = pos_part(a.capacity - pr.lambda_at(a.node));
    if (coef <= 0) {
      s1.holds = false;
      s1.detail += "arc " + std::to_string(id) + "; ";
    }
    if (coef >= outside) {
      s2.holds = false;
      s2.detail += "arc " + std::to_string(id) + "; ";
    }
  }
  rep.extra.conditions = {s1, s2};
  return detail::finish(std::move(rep));
}

inline SufficientReport check_pack_sufficient(const PathInstance& inst, const ArcSelection& sel) {
  SufficientReport rep;
  rep.reason = detail::sufficient_shape(inst);
  if (!rep.reason.empty()) return rep;
  rep.necessary = check_pack_necessary(inst, sel);
  const auto pr = compute_profile(inst, sel);
  std::vector<int> outside;
  for (const auto& a : inst.arcs)
    if (!contains(sel.s_plus, a.id)) outside.push_back(a.id);
  auto with = [&](std::vector<int> base, int add, int drop) {
    if (drop >= 0) base.erase(std::remove(base.begin(), base.end(), drop), base.end());
    base.push_back(add);
    return base;
  };
  ConditionVerdict s1{"i", true, ""}, s2{"ii", true, ""}, s3{"iii", true, ""};
  for (int j : outside) {
    if (detail::cover_with(inst, with(sel.s_plus, j, -1))) continue;
    if (marginal(inst, sel, pr, j, MarginalSide::Add) == 0) continue;
    s1.holds = false;
    s1.detail += "arc " + std::to_string(j) + "; ";
  }
  for (int t : sel.s_plus) {
    bool found = false;
    for (int j : outside)
      if (detail::cover_with(inst, with(sel.s_plus, j, t))) {
        found = true;
        break;
      }
    if (!found) {
      s2.holds = false;
      s2.detail += "arc " + std::to_string(t) + "; ";
    }
  }
  for (int j = 1; j <= inst.n - 1; ++j) {
    bool found = false;
    for (int k : outside) {
      ArcSelection aug;
      aug.first = 1;
      aug.last = inst.n;
      aug.s_plus = with(sel.s_plus, k, -1);
      const auto apr = compute_profile(inst, aug);
      if (!is_path_cover(inst, aug, apr)) continue;
      const auto fl = independence_from_profile(apr);
      if (!fl.backward_at(j) && !fl.forward_at(j + 1)) {
        found = true;
        break;
      }
    }
    if (!found) {
      s3.holds = false;
      s3.detail += "edge " + std::to_string(j) + "; ";
    }
  }
  rep.extra.conditions = {s1, s2, s3};
  return detail::finish(std::move(rep));
}

// Backward then forward pass of effective demands; the result is tight at the path cover inequality.
inline FeasiblePoint build_cover_witness(const PathInstance& inst, const ArcSelection& sel) {
  const std::string shape = detail::sufficient_shape(inst);
  if (!shape.empty()) throw std::invalid_argument("witness needs the single-arc lot-sizing shape: " + shape);
  if (sel.first != 1 || sel.last != inst.n) throw std::invalid_argument("witness needs the window [1, n]");
  if (!is_path_cover(inst, sel, compute_profile(inst, sel))) throw std::invalid_argument("selection is not a path cover");
  const int n = inst.n;
  std::vector<std::int64_t> dbar(n + 1, 0), cap(n + 1, 0), ibar(n, 0), rbar(n, 0);
  for (int j = 1; j <= n; ++j) dbar[j] = inst.d(j);
  for (int id : sel.s_plus) cap[inst.arc(id).node] += inst.arc(id).capacity;
  for (int j = n - 1; j >= 1; --j) {
    std::int64_t delta = std::min(inst.u(j), pos_part(dbar[j + 1] - cap[j + 1]));
    dbar[j] += delta;
    dbar[j + 1] -= delta;
    ibar[j] = delta;
  }
  for (int j = 2; j <= n; ++j) {
    std::int64_t delta = pos_part(dbar[j - 1] - cap[j - 1]);
    dbar[j] += delta;
    dbar[j - 1] -= delta;
    std::int64_t cancel = std::min(delta, ibar[j - 1]);
    rbar[j - 1] = delta - cancel;
    ibar[j - 1] -= cancel;
  }
  auto pt = FeasiblePoint::zeros(inst);
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const auto& a = inst.arcs[t];
    if (contains(sel.s_plus, a.id)) {
      pt.y[t] = Rational(dbar[a.node]);
      pt.x[t] = Rational(1);
    }
  }
  for (int j = 1; j < n; ++j) {
    pt.i[j - 1] = Rational(ibar[j]);
    pt.r[j - 1] = Rational(rbar[j]);
  }
  if (constraint_violation(inst, pt) > 0) throw std::runtime_error("witness construction produced an infeasible point");
  return pt;
}

// Splitting the window at node j into [first, j-1] and [j, last].
struct SeparabilityCheck {
  int lemma = 0;  // 1..4 in the order split-up, split-down, mixed-up, mixed-down
  int node = 0;
  bool triggered = false;
  std::optional<std::int64_t> whole, left, right;

  bool holds() const {
    if (!triggered) return true;
    return whole && left && right && *whole == *left + *right;
  }
};

inline std::vector<SeparabilityCheck> separability_checks(const PathInstance& inst, const ArcSelection& sel) {
  const auto pr = compute_profile(inst, sel);
  std::vector<TerminalArc> sp, sm;
  for (int id : sel.s_plus) sp.push_back({inst.arc(id).node, inst.arc(id).capacity, inst.arc(id).dummy_supply});
  for (int id : sel.s_minus) sm.push_back({inst.arc(id).node, inst.arc(id).capacity, false});
  const auto whole = window_value(inst, sel.first, sel.last, sp, sm);
  auto part = [](const std::vector<TerminalArc>& arcs, int lo, int hi) {
    std::vector<TerminalArc> out;
    for (const auto& a : arcs)
      if (a.node >= lo && a.node <= hi) out.push_back(a);
    return out;
  };
  std::vector<SeparabilityCheck> out;
  for (int j = sel.first + 1; j <= sel.last; ++j) {
    const int p = j - sel.first, q = p - 1;
    const std::int64_t uu = pr.u[q], bb = pr.b[q];
    const bool a_up = pr.alpha_u[p] == pr.alpha_d[q] + uu + pr.s_plus_cap[p];
    const bool a_down = pr.alpha_d[p] == pr.alpha_u[q] + bb + pr.demand[p] + pr.s_minus_cap[p];
    const bool b_up = pr.beta_u[q] == pr.beta_d[p] + bb + pr.s_plus_cap[q];
    const bool b_down = pr.beta_d[q] == pr.beta_u[p] + uu + pr.demand[q] + pr.s_minus_cap[q];
    struct Split {
      int lemma;
      bool triggered;
      bool left_src, left_sink, right_src, right_sink;
    };
    const Split splits[] = {{1, a_up || b_up, true, false, true, false},
                            {2, a_down || b_down, false, true, false, true},
                            {3, a_up && b_down, false, false, true, true},
                            {4, a_down && b_up, true, true, false, false}};
    for (const auto& s : splits) {
      SeparabilityCheck c;
      c.lemma = s.lemma;
      c.node = j;
      c.triggered = s.triggered;
      c.whole = whole;
      if (s.triggered) {
        auto lsp = part(sp, sel.first, j - 1), lsm = part(sm, sel.first, j - 1);
        auto rsp = part(sp, j, sel.last), rsm = part(sm, j, sel.last);
        if (s.left_src) lsp.push_back({j - 1, bb, false});
        if (s.left_sink) lsm.push_back({j - 1, uu, false});
        if (s.right_src) rsp.push_back({j, uu, false});
        if (s.right_sink) rsm.push_back({j, bb, false});
        c.left = window_value(inst, sel.first, j - 1, lsp, lsm);
        c.right = window_value(inst, j, sel.last, rsp, rsm);
      }
      out.push_back(c);
    }
  }
  return out;
}

// Vertices of conv(P): for every x-pattern, the basic solutions of the continuous slice.
struct PolytopeVertices {
  std::vector<FeasiblePoint> points;
  std::int64_t bases_tried = 0;
};

namespace detail {

using RatMatrix = std::vector<std::vector<Rational>>;

// Row-reduces in place and returns the pivot columns.
inline std::vector<int> row_reduce(RatMatrix& m, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
    int sel = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r)
      if (m[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    const Rational piv = m[row][c];
    for (auto& v : m[row]) v /= piv;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::vector<Rational> flatten(const FeasiblePoint& p) {
  std::vector<Rational> v;
  for (const auto* part : {&p.y, &p.x, &p.i, &p.r}) v.insert(v.end(), part->begin(), part->end());
  return v;
}

inline std::string point_key(const FeasiblePoint& p) {
  std::string key;
  for (const auto& v : flatten(p)) key += format_rational(v) + ",";
  return key;
}

inline bool next_combination(std::vector<int>& idx, int total) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < total - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline PolytopeVertices enumerate_vertices(const PathInstance& inst, std::int64_t budget = 5'000'000) {
  const int m = static_cast<int>(inst.arcs.size());
  const int n = inst.n;
  const int nv = m + 2 * (n - 1);  // y, i, r
  PolytopeVertices out;
  std::set<std::string> seen;
  for_each_pattern(inst, [&](const std::vector<bool>& open) {
    std::vector<Rational> lb(nv, Rational(0)), ub(nv, Rational(0));
    for (int t = 0; t < m; ++t) {
      const auto& a = inst.arcs[t];
      const Rational c(a.capacity);
      ub[t] = open[t] || a.dummy_supply ? c : Rational(0);
      if (a.dummy_supply) lb[t] = c;
    }
    for (int j = 1; j < n; ++j) {
      ub[m + j - 1] = Rational(inst.u(j));
      ub[m + n - 1 + j - 1] = Rational(inst.b(j));
    }
    std::vector<int> free_vars;
    std::vector<Rational> base(nv);
    for (int v = 0; v < nv; ++v) {
      if (lb[v] == ub[v])
        base[v] = lb[v];
      else
        free_vars.push_back(v);
    }
    const int nf = static_cast<int>(free_vars.size());
    // Balance rows restricted to free columns, rhs adjusted by fixed ones; last column is rhs.
    detail::RatMatrix rows(n, std::vector<Rational>(nf + 1, Rational(0)));
    auto coef = [&](int row_node, int v) -> Rational {
      if (v < m) {
        const auto& a = inst.arcs[v];
        if (a.node != row_node) return Rational(0);
        return a.incoming() ? Rational(1) : Rational(-1);
      }
      int j = v < m + n - 1 ? v - m + 1 : v - m - n + 2;
      bool fwd = v < m + n - 1;
      if (row_node == j) return fwd ? Rational(-1) : Rational(1);
      if (row_node == j + 1) return fwd ? Rational(1) : Rational(-1);
      return Rational(0);
    };
    for (int r = 0; r < n; ++r) {
      Rational rhs(inst.d(r + 1));
      for (int v = 0; v < nv; ++v)
        if (lb[v] == ub[v] && base[v] != 0) rhs -= coef(r + 1, v) * base[v];
      for (int k = 0; k < nf; ++k) rows[r][k] = coef(r + 1, free_vars[k]);
      rows[r][nf] = rhs;
    }
    auto pivots = detail::row_reduce(rows, nf);
    const int rank = static_cast<int>(pivots.size());
    for (int r = rank; r < n; ++r)
      if (rows[r][nf] != 0) return;  // inconsistent
    rows.resize(rank);
    std::vector<int> basis(rank);
    for (int k = 0; k < rank; ++k) basis[k] = k;
    const int nonbasic = nf - rank;
    do {
      detail::RatMatrix sys(rank, std::vector<Rational>(nf + 1));
      for (int r = 0; r < rank; ++r) sys[r] = rows[r];
      // Reorder so basis columns come first, then reduce to identity on them.
      detail::RatMatrix bm(rank, std::vector<Rational>(rank + nf + 1));
      for (int r = 0; r < rank; ++r) {
        for (int k = 0; k < rank; ++k) bm[r][k] = sys[r][basis[k]];
        for (int k = 0; k <= nf; ++k) bm[r][rank + k] = sys[r][k];
      }
      auto piv = detail::row_reduce(bm, rank);
      if (static_cast<int>(piv.size()) < rank) continue;
      std::vector<int> nb;
      for (int k = 0; k < nf; ++k)
        if (std::find(basis.begin(), basis.end(), k) == basis.end()) nb.push_back(k);
      const std::uint64_t combos = std::uint64_t{1} << nonbasic;
      for (std::uint64_t mask = 0; mask < combos; ++mask) {
        if (++out.bases_tried > budget) throw std::length_error("vertex enumeration budget exceeded");
        std::vector<Rational> val(nf, Rational(0));
        for (int k = 0; k < nonbasic; ++k) val[nb[k]] = (mask >> k) & 1U ? ub[free_vars[nb[k]]] : lb[free_vars[nb[k]]];
        bool ok = true;
        for (int r = 0; r < rank && ok; ++r) {
          Rational x = bm[r][rank + nf];
          for (int k : nb) x -= bm[r][rank + k] * val[k];
          const int v = free_vars[basis[r]];
          if (x < lb[v] || x > ub[v]) ok = false;
          val[basis[r]] = x;
        }
        if (!ok) continue;
        auto pt = FeasiblePoint::zeros(inst);
        std::vector<Rational> full = base;
        for (int k = 0; k < nf; ++k) full[free_vars[k]] = val[k];
        for (int t = 0; t < m; ++t) {
          pt.y[t] = full[t];
          pt.x[t] = open[t] || inst.arcs[t].dummy_supply ? Rational(1) : Rational(0);
        }
        for (int j = 1; j < n; ++j) {
          pt.i[j - 1] = full[m + j - 1];
          pt.r[j - 1] = full[m + n - 1 + j - 1];
        }
        if (seen.insert(detail::point_key(pt)).second) out.points.push_back(std::move(pt));
      }
    } while (detail::next_combination(basis, nf));
  });
  return out;
}

// Affine dimension of a point set; -1 when empty.
inline int affine_dimension(const std::vector<FeasiblePoint>& pts) {
  if (pts.empty()) return -1;
  const auto origin = detail::flatten(pts.front());
  detail::RatMatrix diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    auto v = detail::flatten(pts[k]);
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= origin[c];
    diffs.push_back(std::move(v));
  }
  if (diffs.empty()) return 0;
  return static_cast<int>(detail::row_reduce(diffs, static_cast<int>(origin.size())).size());
}

inline int face_dimension(const PathInstance& inst, const PolytopeVertices& verts, const LinearInequality& ineq) {
  std::vector<FeasiblePoint> tight;
  for (const auto& p : verts.points)
    if (ineq.lhs<Rational>(inst, p) == ineq.rhs) tight.push_back(p);
  return affine_dimension(tight);
}

inline int face_dimension(const PathInstance& inst, const LinearInequality& ineq) {
  if (inst.arcs.size() > 8 || inst.n > 5) throw std::length_error("face_dimension is limited to |E| <= 8, n <= 5");
  return face_dimension(inst, enumerate_vertices(inst), ineq);
}

}  // namespace pathcuts
