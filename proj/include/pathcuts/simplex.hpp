#pragma once

#include "pathcuts/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pathcuts {

template <class T>
struct NumTraits;

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static double feas_tol() { return 1e-7; }
  static double opt_tol() { return 1e-7; }
  static double pivot_tol() { return 1e-9; }
  static double abs(double v) { return std::fabs(v); }
};

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static Rational feas_tol() { return Rational(0); }
  static Rational opt_tol() { return Rational(0); }
  static Rational pivot_tol() { return Rational(0); }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };
enum class RowSense { LessEqual, Equal, GreaterEqual };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

template <class T>
using SparseRow = std::vector<std::pair<int, T>>;

// Dense-tableau bounded-variable simplex, minimizing. Each row owns one slack column; rows may be
// added and removed between solves and the basis is kept for warm starts.
template <class T>
class Simplex {
  using Tr = NumTraits<T>;

 public:
  int column_count() const { return nstruct_; }
  int row_count() const { return m_; }
  std::int64_t pivots() const { return pivots_; }

  int add_column(std::optional<T> lb, std::optional<T> ub, T cost) {
    if (m_ > 0) throw std::logic_error("columns must be added before rows");
    if (!lb && !ub) throw std::invalid_argument("free columns are not supported");
    int j = nstruct_++;
    lb_.push_back(lb.value_or(T(0)));
    ub_.push_back(ub.value_or(T(0)));
    has_lb_.push_back(lb.has_value());
    has_ub_.push_back(ub.has_value());
    cost_.push_back(cost);
    // Start at the bound that makes the slack basis dual feasible when possible.
    bool at_lower = lb && (!ub || !(cost < T(0)));
    status_.push_back(at_lower ? Status::AtLower : Status::AtUpper);
    x_.push_back(at_lower ? *lb : *ub);
    d_.push_back(cost);
    ncols_ = nstruct_;
    stride_ = ncols_;
    return j;
  }

  // Appends a row; the new slack is basic, which keeps any dual-feasible basis dual feasible.
  int add_row(const SparseRow<T>& coeffs, RowSense sense, T rhs) {
    ensure_stride(ncols_ + 1);
    const int q = ncols_++;
    for (int i = 0; i < m_; ++i) at(i, q) = T(0);
    lb_.push_back(T(0));
    ub_.push_back(T(0));
    has_lb_.push_back(sense != RowSense::GreaterEqual);
    has_ub_.push_back(sense != RowSense::LessEqual);
    cost_.push_back(T(0));
    status_.push_back(Status::Basic);
    x_.push_back(T(0));
    d_.push_back(T(0));

    tab_.resize(static_cast<std::size_t>(m_ + 1) * stride_, T(0));
    const int r = m_++;
    T* row = &at(r, 0);
    std::fill(row, row + stride_, T(0));
    T activity(0);
    for (const auto& [j, a] : coeffs) {
      if (j < 0 || j >= nstruct_) throw std::out_of_range("row references unknown column");
      row[j] += a;
    }
    row[q] = T(1);
    // Express the row in terms of the current nonbasic columns.
    for (int i = 0; i < r; ++i) {
      const T f = row[basis_[i]];
      if (f == T(0)) continue;
      const T* src = &at(i, 0);
      for (int j = 0; j < ncols_; ++j)
        if (src[j] != T(0)) row[j] -= f * src[j];
      row[basis_[i]] = T(0);
    }
    for (const auto& [j, a] : coeffs) activity += a * value(j);
    basis_.push_back(q);
    beta_.push_back(rhs - activity);
    rows_.push_back({coeffs, sense, rhs});
    return r;
  }

  void set_bounds(int j, std::optional<T> lb, std::optional<T> ub) {
    if (!lb && !ub) throw std::invalid_argument("free columns are not supported");
    lb_[j] = lb.value_or(T(0));
    ub_[j] = ub.value_or(T(0));
    has_lb_[j] = lb.has_value();
    has_ub_[j] = ub.has_value();
    if (status_[j] == Status::Basic) return;
    T target;
    if (has_lb_[j] && has_ub_[j] && lb_[j] == ub_[j]) {
      target = lb_[j];
    } else if (status_[j] == Status::AtLower && has_lb_[j]) {
      target = lb_[j];
    } else if (status_[j] == Status::AtUpper && has_ub_[j]) {
      target = ub_[j];
    } else {
      status_[j] = has_lb_[j] ? Status::AtLower : Status::AtUpper;
      target = has_lb_[j] ? lb_[j] : ub_[j];
    }
    move_nonbasic(j, target);
  }

  std::optional<T> lower(int j) const { return has_lb_[j] ? std::optional<T>(lb_[j]) : std::nullopt; }
  std::optional<T> upper(int j) const { return has_ub_[j] ? std::optional<T>(ub_[j]) : std::nullopt; }

  // Drops rows whose slack is basic; other rows are kept. Returns how many were removed.
  int remove_rows(const std::vector<int>& rows) {
    std::vector<int> row_of_basic(ncols_, -1);
    for (int i = 0; i < m_; ++i) row_of_basic[basis_[i]] = i;
    // Dropping original row r removes slack column nstruct_+r and the tableau row where it is basic.
    std::vector<bool> drop_tab(m_, false), drop_col(ncols_, false);
    for (int r : rows) {
      if (r < 0 || r >= m_) continue;
      const int q = nstruct_ + r;
      if (status_[q] != Status::Basic || drop_col[q]) continue;
      drop_col[q] = true;
      drop_tab[row_of_basic[q]] = true;
    }
    std::vector<int> col_map(ncols_, -1);
    int nc = 0;
    for (int j = 0; j < ncols_; ++j)
      if (!drop_col[j]) col_map[j] = nc++;
    int removed = 0;
    std::vector<T> tab(static_cast<std::size_t>(m_) * stride_, T(0));
    std::vector<int> basis;
    std::vector<T> beta;
    int out = 0;
    for (int i = 0; i < m_; ++i) {
      if (drop_tab[i]) {
        ++removed;
        continue;
      }
      for (int j = 0; j < ncols_; ++j)
        if (col_map[j] >= 0) tab[static_cast<std::size_t>(out) * stride_ + col_map[j]] = at(i, j);
      basis.push_back(col_map[basis_[i]]);
      beta.push_back(beta_[i]);
      ++out;
    }
    auto compact = [&](auto& vec) {
      std::remove_reference_t<decltype(vec)> next;
      for (int j = 0; j < ncols_; ++j)
        if (col_map[j] >= 0) next.push_back(vec[j]);
      vec = std::move(next);
    };
    compact(lb_);
    compact(ub_);
    compact(has_lb_);
    compact(has_ub_);
    compact(cost_);
    compact(status_);
    compact(x_);
    compact(d_);
    std::vector<RowData> kept;
    for (int r = 0; r < m_; ++r)
      if (!drop_col[nstruct_ + r]) kept.push_back(std::move(rows_[r]));
    rows_ = std::move(kept);
    tab.resize(static_cast<std::size_t>(out) * stride_);
    tab_ = std::move(tab);
    basis_ = std::move(basis);
    beta_ = std::move(beta);
    m_ = out;
    ncols_ = nc;
    return removed;
  }

  bool slack_basic(int r) const { return status_[nstruct_ + r] == Status::Basic; }

  T value(int j) const {
    if (status_[j] != Status::Basic) return x_[j];
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == j) return beta_[i];
    return x_[j];
  }

  std::vector<T> primal() const {
    std::vector<T> out(x_.begin(), x_.begin() + nstruct_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nstruct_) out[basis_[i]] = beta_[i];
    return out;
  }

  T objective() const {
    T z(0);
    auto p = primal();
    for (int j = 0; j < nstruct_; ++j) z += cost_[j] * p[j];
    return z;
  }

  // Row activity a.x of an original row.
  T row_activity(int r) const {
    T s(0);
    auto p = primal();
    for (const auto& [j, a] : rows_[r].coeffs) s += a * p[j];
    return s;
  }

  void set_iteration_limit(std::int64_t limit) { iteration_limit_ = limit; }

  LpStatus solve() {
    std::int64_t budget = iteration_limit_ > 0 ? iteration_limit_ : 20000 + 50LL * (m_ + ncols_);
    std::int64_t start = pivots_;
    for (int round = 0; round < 8; ++round) {
      if (!Tr::exact && pivots_since_refactor_ > 0) refactor();
      if (!primal_feasible()) {
        LpStatus st = dual_feasible() ? dual_simplex(start + budget) : primal_phase1(start + budget);
        if (st != LpStatus::Optimal) return st;
        continue;
      }
      LpStatus st = primal_phase2(start + budget);
      if (st != LpStatus::Optimal) return st;
      if (Tr::exact) return LpStatus::Optimal;
      refactor();
      if (primal_feasible() && dual_feasible()) return LpStatus::Optimal;
    }
    return LpStatus::IterationLimit;
  }

 private:
  enum class Status : std::uint8_t { Basic, AtLower, AtUpper };

  struct RowData {
    SparseRow<T> coeffs;
    RowSense sense;
    T rhs;
  };

  T& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * stride_ + j]; }
  const T& at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * stride_ + j]; }

  void ensure_stride(int want) {
    if (want <= stride_) return;
    int next = std::max(want, stride_ * 2);
    std::vector<T> tab(static_cast<std::size_t>(m_) * next, T(0));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < ncols_; ++j) tab[static_cast<std::size_t>(i) * next + j] = at(i, j);
    tab_ = std::move(tab);
    stride_ = next;
  }

  static T chop(const T& v) {
    if constexpr (Tr::exact)
      return v;
    else
      return std::fabs(v) < 1e-13 ? T(0) : v;
  }

  void move_nonbasic(int j, const T& target) {
    T delta = target - x_[j];
    if (delta != T(0))
      for (int i = 0; i < m_; ++i)
        if (at(i, j) != T(0)) beta_[i] -= at(i, j) * delta;
    x_[j] = target;
  }

  bool below(int i) const { return has_lb_[basis_[i]] && beta_[i] < lb_[basis_[i]] - Tr::feas_tol(); }
  bool above(int i) const { return has_ub_[basis_[i]] && beta_[i] > ub_[basis_[i]] + Tr::feas_tol(); }

  bool primal_feasible() const {
    for (int i = 0; i < m_; ++i)
      if (below(i) || above(i)) return false;
    return true;
  }

  bool fixed(int j) const { return has_lb_[j] && has_ub_[j] && lb_[j] == ub_[j]; }

  bool can_increase(int j) const { return status_[j] == Status::AtLower && !fixed(j); }
  bool can_decrease(int j) const { return status_[j] == Status::AtUpper && !fixed(j); }

  bool dual_feasible() const {
    for (int j = 0; j < ncols_; ++j) {
      if (can_increase(j) && d_[j] < -Tr::opt_tol()) return false;
      if (can_decrease(j) && d_[j] > Tr::opt_tol()) return false;
    }
    return true;
  }

  void pivot(int r, int q) {
    ++pivots_;
    ++pivots_since_refactor_;
    T* prow = &at(r, 0);
    const T inv = T(1) / prow[q];
    for (int j = 0; j < ncols_; ++j)
      if (prow[j] != T(0)) prow[j] *= inv;
    prow[q] = T(1);
    std::vector<int> nz;
    for (int j = 0; j < ncols_; ++j)
      if (prow[j] != T(0)) nz.push_back(j);
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      T* row = &at(i, 0);
      const T f = row[q];
      if (f == T(0)) continue;
      for (int j : nz) row[j] -= f * prow[j];
      row[q] = T(0);
      if constexpr (!Tr::exact)
        for (int j : nz) row[j] = chop(row[j]);
    }
    const T fd = d_[q];
    if (fd != T(0))
      for (int j : nz) d_[j] -= fd * prow[j];
    d_[q] = T(0);
    status_[basis_[r]] = Status::AtLower;  // caller fixes the leaving status
    basis_[r] = q;
    status_[q] = Status::Basic;
  }

  // Leaving variable settles at the bound it reached.
  void settle_leaving(int leaving, bool at_upper) {
    status_[leaving] = at_upper ? Status::AtUpper : Status::AtLower;
    x_[leaving] = at_upper ? ub_[leaving] : lb_[leaving];
  }

  LpStatus primal_phase2(std::int64_t limit) { return primal_loop(false, limit); }
  LpStatus primal_phase1(std::int64_t limit) { return primal_loop(true, limit); }

  // Phase 1 minimizes the sum of bound violations of basic variables.
  LpStatus primal_loop(bool phase1, std::int64_t limit) {
    int degenerate = 0;
    bool bland = false;
    std::vector<T> dd;
    while (true) {
      if (pivots_ >= limit) return LpStatus::IterationLimit;
      if (phase1) {
        if (primal_feasible()) return LpStatus::Optimal;
        dd.assign(ncols_, T(0));
        for (int i = 0; i < m_; ++i) {
          int sign = below(i) ? 1 : (above(i) ? -1 : 0);
          if (sign == 0) continue;
          const T* row = &at(i, 0);
          for (int j = 0; j < ncols_; ++j)
            if (row[j] != T(0)) dd[j] += sign > 0 ? row[j] : T(-row[j]);
        }
      }
      const std::vector<T>& dj = phase1 ? dd : d_;
      int q = -1;
      T best(0);
      for (int j = 0; j < ncols_; ++j) {
        if (status_[j] == Status::Basic) continue;
        T score(0);
        if (can_increase(j) && dj[j] < -Tr::opt_tol()) score = -dj[j];
        else if (can_decrease(j) && dj[j] > Tr::opt_tol()) score = dj[j];
        else continue;
        if (bland) {
          q = j;
          break;
        }
        if (q < 0 || score > best) {
          q = j;
          best = score;
        }
      }
      if (q < 0) return phase1 ? LpStatus::Infeasible : LpStatus::Optimal;
      const int dir = can_increase(q) ? 1 : -1;

      // Harris two-pass ratio test; rate of basic i is -alpha_iq * dir.
      struct Block {
        int row;
        T dist;
        T rate;
        bool to_upper;
      };
      std::vector<Block> blocks;
      for (int i = 0; i < m_; ++i) {
        const T alpha = at(i, q);
        if (Tr::abs(alpha) <= Tr::pivot_tol()) continue;
        const int bv = basis_[i];
        const T rate = dir > 0 ? T(-alpha) : alpha;
        if (phase1 && below(i)) {
          if (rate > T(0)) blocks.push_back({i, lb_[bv] - beta_[i], rate, false});
          continue;
        }
        if (phase1 && above(i)) {
          if (rate < T(0)) blocks.push_back({i, beta_[i] - ub_[bv], T(-rate), true});
          continue;
        }
        if (rate < T(0) && has_lb_[bv]) {
          T dist = beta_[i] - lb_[bv];
          blocks.push_back({i, dist < T(0) ? T(0) : dist, T(-rate), false});
        } else if (rate > T(0) && has_ub_[bv]) {
          T dist = ub_[bv] - beta_[i];
          blocks.push_back({i, dist < T(0) ? T(0) : dist, rate, true});
        }
      }
      const bool can_flip = has_lb_[q] && has_ub_[q];
      const T flip = can_flip ? T(ub_[q] - lb_[q]) : T(0);
      std::optional<T> theta;
      if (can_flip) theta = flip;
      for (const auto& bk : blocks) {
        T relaxed = (bk.dist + Tr::feas_tol()) / bk.rate;
        if (!theta || relaxed < *theta) theta = relaxed;
      }
      int leave = -1;
      bool leave_upper = false;
      T leave_alpha(0), leave_step(0);
      if (theta) {
        for (const auto& bk : blocks) {
          T ratio = bk.dist / bk.rate;
          if (ratio > *theta) continue;
          bool take = leave < 0;
          if (!take) {
            if (bland) take = ratio < leave_step || (ratio == leave_step && basis_[bk.row] < basis_[leave]);
            else take = bk.rate > leave_alpha;
          }
          if (take) {
            leave = bk.row;
            leave_upper = bk.to_upper;
            leave_alpha = bk.rate;
            leave_step = ratio;
          }
        }
        if (leave >= 0 && can_flip && flip <= leave_step) leave = -1;
        theta = leave >= 0 ? leave_step : flip;
      }
      if (!theta) return phase1 ? LpStatus::Infeasible : LpStatus::Unbounded;
      const T step = *theta;
      if (step == T(0)) {
        if (++degenerate > 50) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      for (int i = 0; i < m_; ++i) {
        const T alpha = at(i, q);
        if (alpha != T(0)) beta_[i] -= alpha * (dir > 0 ? step : T(-step));
      }
      const T entering_value = x_[q] + (dir > 0 ? step : T(-step));
      if (leave < 0) {
        // Bound flip.
        status_[q] = dir > 0 ? Status::AtUpper : Status::AtLower;
        x_[q] = dir > 0 ? ub_[q] : lb_[q];
        ++pivots_;
        continue;
      }
      const int leaving = basis_[leave];
      pivot(leave, q);
      beta_[leave] = entering_value;
      settle_leaving(leaving, leave_upper);
    }
  }

  LpStatus dual_simplex(std::int64_t limit) {
    int degenerate = 0;
    bool bland = false;
    while (true) {
      if (pivots_ >= limit) return LpStatus::IterationLimit;
      int r = -1;
      T worst(0);
      for (int i = 0; i < m_; ++i) {
        T viol(0);
        if (below(i)) viol = lb_[basis_[i]] - beta_[i];
        else if (above(i)) viol = beta_[i] - ub_[basis_[i]];
        else continue;
        if (bland) {
          if (r < 0 || basis_[i] < basis_[r]) r = i;
          continue;
        }
        if (r < 0 || viol > worst) {
          r = i;
          worst = viol;
        }
      }
      if (r < 0) return LpStatus::Optimal;
      const int leaving = basis_[r];
      const bool increase = below(r);
      const T target = increase ? lb_[leaving] : ub_[leaving];
      const T* prow = &at(r, 0);

      // Harris two-pass ratio test on the reduced costs.
      int q = -1;
      T bound_ratio(0);
      bool have_bound = false;
      auto eligible = [&](int j, const T& a) {
        if (status_[j] == Status::Basic || fixed(j)) return false;
        if (Tr::abs(a) <= Tr::pivot_tol()) return false;
        if (increase) return (can_increase(j) && a < T(0)) || (can_decrease(j) && a > T(0));
        return (can_increase(j) && a > T(0)) || (can_decrease(j) && a < T(0));
      };
      for (int j = 0; j < ncols_; ++j) {
        const T a = prow[j];
        if (!eligible(j, a)) continue;
        T ratio = (Tr::abs(d_[j]) + Tr::opt_tol()) / Tr::abs(a);
        if (!have_bound || ratio < bound_ratio) {
          bound_ratio = ratio;
          have_bound = true;
        }
      }
      if (!have_bound) return LpStatus::Infeasible;
      T best_ratio(0), best_alpha(0);
      for (int j = 0; j < ncols_; ++j) {
        const T a = prow[j];
        if (!eligible(j, a)) continue;
        T ratio = Tr::abs(d_[j]) / Tr::abs(a);
        if (ratio > bound_ratio) continue;
        bool take = q < 0;
        if (!take) {
          if (bland) take = ratio < best_ratio || (ratio == best_ratio && j < q);
          else take = Tr::abs(a) > best_alpha;
        }
        if (take) {
          q = j;
          best_ratio = ratio;
          best_alpha = Tr::abs(a);
        }
      }
      if (best_ratio == T(0)) {
        if (++degenerate > 50) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      const T alpha_rq = prow[q];
      const T delta = (beta_[r] - target) / alpha_rq;
      for (int i = 0; i < m_; ++i) {
        const T a = at(i, q);
        if (a != T(0)) beta_[i] -= a * delta;
      }
      const T entering_value = x_[q] + delta;
      pivot(r, q);
      beta_[r] = entering_value;
      settle_leaving(leaving, !increase);
    }
  }

  // Rebuilds the tableau, basic values and reduced costs from the original rows.
  void refactor() {
    pivots_since_refactor_ = 0;
    if constexpr (Tr::exact) return;
    if (m_ == 0) {
      for (int j = 0; j < ncols_; ++j) d_[j] = cost_[j];
      return;
    }
    const int w = ncols_ + 1;
    std::vector<T> mat(static_cast<std::size_t>(m_) * w, T(0));
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, a] : rows_[i].coeffs) mat[static_cast<std::size_t>(i) * w + j] += a;
      mat[static_cast<std::size_t>(i) * w + nstruct_ + i] = T(1);
      mat[static_cast<std::size_t>(i) * w + ncols_] = rows_[i].rhs;
    }
    std::vector<int> order(m_);
    std::vector<bool> used(m_, false);
    for (int k = 0; k < m_; ++k) {
      const int q = basis_[k];
      int p = -1;
      T best(0);
      for (int i = 0; i < m_; ++i) {
        if (used[i]) continue;
        T a = Tr::abs(mat[static_cast<std::size_t>(i) * w + q]);
        if (a > best) {
          best = a;
          p = i;
        }
      }
      if (p < 0 || best < T(1e-11)) return;  // keep the incremental tableau
      used[p] = true;
      order[k] = p;
      T* prow = &mat[static_cast<std::size_t>(p) * w];
      const T inv = T(1) / prow[q];
      for (int j = 0; j < w; ++j) prow[j] *= inv;
      for (int i = 0; i < m_; ++i) {
        if (i == p) continue;
        T* row = &mat[static_cast<std::size_t>(i) * w];
        const T f = row[q];
        if (f == T(0)) continue;
        for (int j = 0; j < w; ++j)
          if (prow[j] != T(0)) row[j] -= f * prow[j];
      }
    }
    for (int k = 0; k < m_; ++k) {
      const T* src = &mat[static_cast<std::size_t>(order[k]) * w];
      T* dst = &at(k, 0);
      for (int j = 0; j < ncols_; ++j) dst[j] = chop(src[j]);
      T v = src[ncols_];
      for (int j = 0; j < ncols_; ++j)
        if (status_[j] != Status::Basic && dst[j] != T(0)) v -= dst[j] * x_[j];
      beta_[k] = v;
    }
    for (int j = 0; j < ncols_; ++j) {
      T v = cost_[j];
      for (int k = 0; k < m_; ++k)
        if (at(k, j) != T(0)) v -= cost_[basis_[k]] * at(k, j);
      d_[j] = status_[j] == Status::Basic ? T(0) : v;
    }
  }

  int nstruct_ = 0;
  int ncols_ = 0;
  int m_ = 0;
  int stride_ = 0;
  std::vector<T> tab_;
  std::vector<T> lb_, ub_;
  std::vector<bool> has_lb_, has_ub_;
  std::vector<T> cost_;
  std::vector<Status> status_;
  std::vector<T> x_;
  std::vector<T> d_;
  std::vector<int> basis_;
  std::vector<T> beta_;
  std::vector<RowData> rows_;
  std::int64_t pivots_ = 0;
  std::int64_t pivots_since_refactor_ = 0;
  std::int64_t iteration_limit_ = 0;
};

}  // namespace pathcuts
