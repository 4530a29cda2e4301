#pragma once

#include "pathcuts/mincut.hpp"
#include "pathcuts/model.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pathcuts {

enum class CutFamily { PathCover, PathPack, FlowCover, FlowPack, SubmodularFirst, SubmodularSecond };

inline const char* to_string(CutFamily f) {
  switch (f) {
    case CutFamily::PathCover: return "path_cover";
    case CutFamily::PathPack: return "path_pack";
    case CutFamily::FlowCover: return "flow_cover";
    case CutFamily::FlowPack: return "flow_pack";
    case CutFamily::SubmodularFirst: return "submodular_first";
    case CutFamily::SubmodularSecond: return "submodular_second";
  }
  return "?";
}

// sum coef*var <= rhs. y and x are keyed by arc id, i and r by edge index j.
struct LinearInequality {
  std::map<int, Rational> y, x, i, r;
  Rational rhs{0};
  CutFamily family = CutFamily::PathCover;
  ArcSelection selection;

  void add(std::map<int, Rational>& terms, int key, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms[key];
    slot += c;
    if (slot == 0) terms.erase(key);
  }
  void add_y(int id, const Rational& c) { add(y, id, c); }
  void add_x(int id, const Rational& c) { add(x, id, c); }
  void add_i(int j, const Rational& c) { add(i, j, c); }
  void add_r(int j, const Rational& c) { add(r, j, c); }

  template <class T>
  T lhs(const PathInstance& inst, const Point<T>& p) const {
    T s(0);
    for (const auto& [id, c] : y) s += T(c) * p.y[inst.position(id)];
    for (const auto& [id, c] : x) s += T(c) * p.x[inst.position(id)];
    for (const auto& [j, c] : i) s += T(c) * p.i[j - 1];
    for (const auto& [j, c] : r) s += T(c) * p.r[j - 1];
    return s;
  }

  double violation(const PathInstance& inst, const FractionalPoint& p) const {
    double s = 0;
    for (const auto& [id, c] : y) s += to_double(c) * p.y[inst.position(id)];
    for (const auto& [id, c] : x) s += to_double(c) * p.x[inst.position(id)];
    for (const auto& [j, c] : i) s += to_double(c) * p.i[j - 1];
    for (const auto& [j, c] : r) s += to_double(c) * p.r[j - 1];
    return s - to_double(rhs);
  }

  bool operator==(const LinearInequality& o) const { return y == o.y && x == o.x && i == o.i && r == o.r && rhs == o.rhs; }
};

// Positive rescaling making the first nonzero coefficient (order y, x, i, r) equal to 1.
inline LinearInequality normalized(const LinearInequality& in) {
  Rational lead(0);
  for (const auto* terms : {&in.y, &in.x, &in.i, &in.r})
    if (lead == 0 && !terms->empty()) lead = terms->begin()->second;
  if (lead == 0) lead = in.rhs == 0 ? Rational(1) : (in.rhs < 0 ? Rational(-in.rhs) : in.rhs);
  if (lead < 0) lead = -lead;
  LinearInequality out = in;
  for (auto* terms : {&out.y, &out.x, &out.i, &out.r})
    for (auto& kv : *terms) kv.second /= lead;
  out.rhs /= lead;
  return out;
}

inline std::string normalized_key(const LinearInequality& in) {
  auto n = normalized(in);
  std::ostringstream os;
  auto put = [&](char tag, const std::map<int, Rational>& terms) {
    for (const auto& [k, c] : terms) os << tag << k << ':' << format_rational(c) << ' ';
  };
  put('y', n.y);
  put('x', n.x);
  put('i', n.i);
  put('r', n.r);
  os << "<= " << format_rational(n.rhs);
  return os.str();
}

inline std::string format_ids(const std::vector<int>& ids) {
  std::string s = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? "," : "") + std::to_string(ids[k]);
  return s + "}";
}

// LP-file style line with a provenance comment.
inline std::string dump(const LinearInequality& c) {
  std::ostringstream os;
  bool first = true;
  auto put = [&](const char* name, const std::map<int, Rational>& terms) {
    for (const auto& [k, v] : terms) {
      bool neg = v < 0;
      Rational mag = neg ? Rational(-v) : v;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mag != 1) os << pretty_rational(mag) << ' ';
      os << name << k;
      first = false;
    }
  };
  put("y", c.y);
  put("x", c.x);
  put("i", c.i);
  put("r", c.r);
  if (first) os << "0";
  os << " <= " << pretty_rational(c.rhs);
  const auto& s = c.selection;
  os << " \\ " << to_string(c.family) << " window=[" << s.first << "," << s.last << "] S+=" << format_ids(s.s_plus)
     << " S-=" << format_ids(s.s_minus) << " L-=" << format_ids(s.l_minus);
  return os.str();
}

namespace detail {

inline std::vector<int> k_minus(const PathInstance& inst, const ArcSelection& sel) {
  std::vector<int> out;
  for (const auto& a : inst.arcs)
    if (!a.incoming() && a.node >= sel.first && a.node <= sel.last && !contains(sel.s_minus, a.id) &&
        !contains(sel.l_minus, a.id))
      out.push_back(a.id);
  return out;
}

inline std::int64_t s_minus_capacity(const PathInstance& inst, const ArcSelection& sel) {
  std::int64_t s = 0;
  for (int id : sel.s_minus) s = checked_add(s, inst.arc(id).capacity);
  return s;
}

inline std::int64_t s_plus_capacity(const PathInstance& inst, const ArcSelection& sel) {
  std::int64_t s = 0;
  for (int id : sel.s_plus) s = checked_add(s, inst.arc(id).capacity);
  return s;
}

// Cover-type inequality given per-node excess values.
template <class Lambda>
LinearInequality cover_inequality(const PathInstance& inst, const ArcSelection& sel, Lambda lambda_at) {
  LinearInequality cut;
  cut.selection = sel;
  Rational rhs(checked_add(inst.demand_sum(sel.first, sel.last), s_minus_capacity(inst, sel)));
  for (int id : sel.s_plus) {
    const auto& a = inst.arc(id);
    cut.add_y(id, 1);
    std::int64_t coef = pos_part(a.capacity - lambda_at(a.node));
    cut.add_x(id, Rational(-coef));
    rhs -= coef;
  }
  for (int id : sel.l_minus) {
    const auto& a = inst.arc(id);
    cut.add_x(id, Rational(-std::min(a.capacity, lambda_at(a.node))));
  }
  for (int id : k_minus(inst, sel)) cut.add_y(id, -1);
  if (sel.first > 1) cut.add_r(sel.first - 1, -1);
  if (sel.last < inst.n) cut.add_i(sel.last, -1);
  cut.rhs = rhs;
  return cut;
}

// Pack-type inequality given per-node deficit values.
template <class Mu>
LinearInequality pack_inequality(const PathInstance& inst, const ArcSelection& sel, Mu mu_at) {
  LinearInequality cut;
  cut.selection = sel;
  Rational rhs(s_plus_capacity(inst, sel));
  for (const auto& a : inst.arcs) {
    if (!a.incoming() || a.node < sel.first || a.node > sel.last) continue;
    cut.add_y(a.id, 1);
    if (!contains(sel.s_plus, a.id)) cut.add_x(a.id, Rational(-std::min(a.capacity, mu_at(a.node))));
  }
  for (int id : sel.s_minus) {
    const auto& a = inst.arc(id);
    std::int64_t coef = pos_part(a.capacity - mu_at(a.node));
    cut.add_x(id, Rational(-coef));
    rhs -= coef;
  }
  for (int id : k_minus(inst, sel)) cut.add_y(id, -1);
  if (sel.first > 1) {
    cut.add_i(sel.first - 1, 1);
    rhs += std::min(inst.u(sel.first - 1), mu_at(sel.first));
    cut.add_r(sel.first - 1, -1);
  }
  if (sel.last < inst.n) {
    cut.add_r(sel.last, 1);
    rhs += std::min(inst.b(sel.last), mu_at(sel.last));
    cut.add_i(sel.last, -1);
  }
  cut.rhs = rhs;
  return cut;
}

}  // namespace detail

inline bool is_path_cover(const PathInstance& inst, const ArcSelection& sel, const MinCutProfile& pr) {
  return pr.value == checked_add(inst.demand_sum(sel.first, sel.last), detail::s_minus_capacity(inst, sel));
}

inline bool is_path_pack(const PathInstance& inst, const ArcSelection& sel, const MinCutProfile& pr) {
  return pr.value == detail::s_plus_capacity(inst, sel);
}

inline LinearInequality build_path_cover(const PathInstance& inst, const ArcSelection& sel) {
  if (sel.mode != CoefficientMode::Cover) throw std::invalid_argument("path cover needs a cover-mode selection");
  auto pr = compute_profile(inst, sel);
  if (!is_path_cover(inst, sel, pr)) throw std::invalid_argument("selection is not a path cover");
  auto cut = detail::cover_inequality(inst, sel, [&](int node) { return pr.lambda_at(node); });
  cut.family = CutFamily::PathCover;
  return cut;
}

inline LinearInequality build_path_pack(const PathInstance& inst, const ArcSelection& sel) {
  if (sel.mode != CoefficientMode::Pack) throw std::invalid_argument("path pack needs a pack-mode selection");
  if (!sel.l_minus.empty()) throw std::invalid_argument("path pack requires L- to be empty");
  auto pr = compute_profile(inst, sel);
  if (!is_path_pack(inst, sel, pr)) throw std::invalid_argument("selection is not a path pack");
  auto cut = detail::pack_inequality(inst, sel, [&](int node) { return pr.mu_at(node); });
  cut.family = CutFamily::PathPack;
  return cut;
}

// Single excess value for the window treated as one merged node.
inline std::int64_t merged_excess(const PathInstance& inst, const ArcSelection& sel) {
  return detail::s_plus_capacity(inst, sel) - inst.demand_sum(sel.first, sel.last) - detail::s_minus_capacity(inst, sel);
}

inline LinearInequality build_flow_cover(const PathInstance& inst, const ArcSelection& sel) {
  validate_selection(inst, sel);
  if (sel.mode != CoefficientMode::Cover) throw std::invalid_argument("flow cover needs a cover-mode selection");
  const std::int64_t lambda = merged_excess(inst, sel);
  if (lambda <= 0) throw std::invalid_argument("selection is not a flow cover");
  auto cut = detail::cover_inequality(inst, sel, [&](int) { return lambda; });
  cut.family = CutFamily::FlowCover;
  return cut;
}

inline LinearInequality build_flow_pack(const PathInstance& inst, const ArcSelection& sel) {
  validate_selection(inst, sel);
  if (sel.mode != CoefficientMode::Pack) throw std::invalid_argument("flow pack needs a pack-mode selection");
  if (!sel.l_minus.empty()) throw std::invalid_argument("flow pack requires L- to be empty");
  const std::int64_t mu = -merged_excess(inst, sel);
  if (mu <= 0) throw std::invalid_argument("selection is not a flow pack");
  auto cut = detail::pack_inequality(inst, sel, [&](int) { return mu; });
  cut.family = CutFamily::FlowPack;
  return cut;
}

// Arcs of the standalone window, boundary path flows included as always-open arcs.
struct WindowArc {
  enum class Kind { Arc, FwdIn, BwdIn, BwdOut, FwdOut };
  Kind kind;
  int key;  // arc id, or path edge index
  int node;
  bool incoming;
  std::int64_t capacity;
  bool dummy = false;
};

inline std::vector<WindowArc> window_arc_list(const PathInstance& inst, int first, int last) {
  std::vector<WindowArc> out;
  for (const auto& a : inst.arcs)
    if (a.node >= first && a.node <= last)
      out.push_back({WindowArc::Kind::Arc, a.id, a.node, a.incoming(), a.capacity, a.dummy_supply});
  if (first > 1) {
    out.push_back({WindowArc::Kind::FwdIn, first - 1, first, true, inst.u(first - 1)});
    out.push_back({WindowArc::Kind::BwdOut, first - 1, first, false, inst.b(first - 1)});
  }
  if (last < inst.n) {
    out.push_back({WindowArc::Kind::BwdIn, last, last, true, inst.b(last)});
    out.push_back({WindowArc::Kind::FwdOut, last, last, false, inst.u(last)});
  }
  return out;
}

enum class SubmodularForm { First, Second };

// Builds the inequality straight from value-function evaluations (max-flow oracle), no closed forms.
inline LinearInequality build_submodular_generic(const PathInstance& inst, const ArcSelection& sel, SubmodularForm form) {
  validate_selection(inst, sel);
  const auto arcs = window_arc_list(inst, sel.first, sel.last);
  const std::size_t m = arcs.size();
  auto is_real = [&](std::size_t k) { return arcs[k].kind == WindowArc::Kind::Arc; };
  std::vector<bool> in_k_plus(m), in_k_minus(m), in_c(m), in_s_minus(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& a = arcs[k];
    bool splus = is_real(k) && a.incoming && contains(sel.s_plus, a.key);
    bool lminus = is_real(k) && !a.incoming && contains(sel.l_minus, a.key);
    in_s_minus[k] = is_real(k) && !a.incoming && contains(sel.s_minus, a.key);
    in_c[k] = splus || lminus;
    in_k_plus[k] = a.incoming && (sel.mode == CoefficientMode::Pack || splus);
    in_k_minus[k] = !a.incoming && !in_s_minus[k] && !lminus;
  }
  // v(C') for an objective set C' given as a membership mask; sinks are E- outside K- and outside C'.
  auto value = [&](const std::vector<bool>& member) -> std::int64_t {
    std::vector<TerminalArc> sources, sinks;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& a = arcs[k];
      if (a.incoming && member[k] && in_k_plus[k]) sources.push_back({a.node, a.capacity, a.dummy});
      if (!a.incoming && !member[k] && !in_k_minus[k]) sinks.push_back({a.node, a.capacity, false});
    }
    auto v = window_value(inst, sel.first, sel.last, sources, sinks);
    if (!v) throw std::invalid_argument("value function infeasible for this selection");
    return *v;
  };
  const std::int64_t v_c = value(in_c);
  std::vector<bool> all(m, true), none(m, false);
  const std::int64_t v_all = form == SubmodularForm::Second ? value(all) : 0;
  const std::int64_t v_none = form == SubmodularForm::First ? value(none) : 0;

  // Coefficients in window-arc space: sum a_k y_k + sum g_k xbar_k <= const.
  std::vector<Rational> ycoef(m, Rational(0)), xbar(m, Rational(0));
  Rational constant(v_c);
  for (std::size_t k = 0; k < m; ++k) {
    if (in_k_plus[k]) ycoef[k] = 1;
    if (in_k_minus[k]) ycoef[k] = -1;
    if (in_c[k]) {
      std::int64_t rho;
      if (form == SubmodularForm::First) {
        auto less = in_c;
        less[k] = false;
        rho = v_c - value(less);
      } else {
        auto less = all;
        less[k] = false;
        rho = v_all - value(less);
      }
      // rho (1 - xbar) on the left.
      constant -= rho;
      xbar[k] -= rho;
    } else {
      std::int64_t rho;
      if (form == SubmodularForm::First) {
        auto more = none;
        more[k] = true;
        rho = value(more) - v_none;
      } else {
        auto more = in_c;
        more[k] = true;
        rho = value(more) - v_c;
      }
      xbar[k] -= rho;
    }
  }
  LinearInequality cut;
  cut.selection = sel;
  cut.family = form == SubmodularForm::First ? CutFamily::SubmodularFirst : CutFamily::SubmodularSecond;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& a = arcs[k];
    // xbar = x for incoming arcs and 1 - x for outgoing ones; boundary arcs have x = 1.
    Rational xc = a.incoming ? xbar[k] : Rational(-xbar[k]);
    if (!a.incoming) constant -= xbar[k];
    switch (a.kind) {
      case WindowArc::Kind::Arc:
        cut.add_y(a.key, ycoef[k]);
        cut.add_x(a.key, xc);
        break;
      case WindowArc::Kind::FwdIn:
      case WindowArc::Kind::FwdOut:
        cut.add_i(a.key, ycoef[k]);
        constant -= xc;
        break;
      case WindowArc::Kind::BwdIn:
      case WindowArc::Kind::BwdOut:
        cut.add_r(a.key, ycoef[k]);
        constant -= xc;
        break;
    }
  }
  cut.rhs = constant;
  return cut;
}

struct ValidityCertificate {
  bool valid = true;
  std::optional<Rational> max_violation;  // empty when no x-pattern is feasible
  std::optional<FeasiblePoint> witness;
};

// Exact check: maximize lhs - rhs over every x-pattern's continuous slice.
inline ValidityCertificate check_validity(const PathInstance& inst, const LinearInequality& cut) {
  ValidityCertificate cert;
  SliceObjective<Rational> obj;
  obj.y.assign(inst.arcs.size(), Rational(0));
  obj.i.assign(std::max(0, inst.n - 1), Rational(0));
  obj.r.assign(std::max(0, inst.n - 1), Rational(0));
  for (const auto& [id, c] : cut.y) obj.y[inst.position(id)] = c;
  for (const auto& [j, c] : cut.i) obj.i[j - 1] = c;
  for (const auto& [j, c] : cut.r) obj.r[j - 1] = c;
  for_each_pattern(inst, [&](const std::vector<bool>& open) {
    auto res = optimize_slice<Rational>(inst, open, obj, true);
    if (res.status != LpStatus::Optimal) return;
    Rational total = cut.lhs(inst, res.point) - cut.rhs;
    if (!cert.max_violation || total > *cert.max_violation) {
      cert.max_violation = total;
      cert.witness = res.point;
    }
  });
  cert.valid = !cert.max_violation || *cert.max_violation <= 0;
  return cert;
}

struct DominanceEntry {
  int node;
  std::int64_t path_value;    // lambda_j or mu_j
  std::int64_t merged_value;  // lambda or mu of the merged node
};

struct DominanceReport {
  CoefficientMode mode;
  std::vector<DominanceEntry> entries;
  bool dominated = true;  // path values never exceed the merged value
};

inline DominanceReport dominance_report(const PathInstance& inst, const ArcSelection& sel) {
  auto pr = compute_profile(inst, sel);
  DominanceReport rep{sel.mode, {}, true};
  const std::int64_t excess = merged_excess(inst, sel);
  const std::int64_t merged = sel.mode == CoefficientMode::Cover ? pos_part(excess) : pos_part(-excess);
  for (int j = sel.first; j <= sel.last; ++j) {
    std::int64_t pv = sel.mode == CoefficientMode::Cover ? pr.lambda_at(j) : pr.mu_at(j);
    rep.entries.push_back({j, pv, merged});
    if (pv > merged) rep.dominated = false;
  }
  return rep;
}

}  // namespace pathcuts
