#pragma once

#include "pathcuts/facets.hpp"
#include "pathcuts/generate.hpp"
#include "pathcuts/solve.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pathcuts {

using ProfileFn = std::function<MinCutProfile(const PathInstance&, const ArcSelection&)>;

inline MinCutProfile default_profile(const PathInstance& inst, const ArcSelection& sel) {
  return compute_profile(inst, sel);
}

// Forward path capacities inflated by one inside the recursions; used to check that the suites notice.
inline MinCutProfile faulty_profile(const PathInstance& inst, const ArcSelection& sel) {
  const auto pr = compute_profile(inst, sel);
  auto u = pr.u;
  for (auto& v : u) ++v;
  auto bad = profile_from_aggregates(pr.first, pr.demand, u, pr.b, pr.s_plus_cap, pr.s_minus_cap);
  bad.u = pr.u;
  return bad;
}

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  double seconds = 0;
  std::string first_failure;
  std::vector<std::string> notes;

  void fail(const std::string& what) {
    pass = false;
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
};

// Exhaustive facet family: every arc multiset over (node, direction, capacity) with the listed values.
struct FacetFamily {
  int max_n = 3;
  int max_arcs = 4;
  std::vector<std::int64_t> demands{1, 2};
  std::vector<std::int64_t> path_caps{1, 2};
  std::vector<std::int64_t> arc_caps{1, 2};
  int max_outgoing = 1;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
  ProfileFn profile = default_profile;
  int equivalence_instances = 1000;
  int validity_instances = 200;
  int validity_selections = 12;
  int dominance_selections = 500;
  int prop6_selections = 100;
  int solver_instances = 100;
  FacetFamily facets;
};

namespace detail {

// Runs fn(k) for k in [0, count) on `jobs` threads; callers index results by k for determinism.
inline void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::int64_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t k) { return base * 0x9E3779B97F4A7C15ULL + k + 1; }

// Random window and objective sets; every outgoing arc lands in S-, L- or K-.
inline ArcSelection random_selection(const PathInstance& inst, Rng& rng) {
  ArcSelection sel;
  sel.first = static_cast<int>(rng.uniform_int(1, inst.n));
  sel.last = static_cast<int>(rng.uniform_int(sel.first, inst.n));
  for (const auto& a : inst.arcs) {
    if (a.node < sel.first || a.node > sel.last) continue;
    if (a.incoming()) {
      if (a.dummy_supply || rng.coin(0.6)) sel.s_plus.push_back(a.id);
    } else {
      auto r = rng.uniform_int(0, 2);
      if (r == 1) sel.s_minus.push_back(a.id);
      if (r == 2) sel.l_minus.push_back(a.id);
    }
  }
  sel.mode = rng.coin(0.5) ? CoefficientMode::Cover : CoefficientMode::Pack;
  if (sel.mode == CoefficientMode::Pack) sel.l_minus.clear();
  return sel;
}

inline std::string describe(const ArcSelection& sel) {
  std::ostringstream os;
  os << "window=[" << sel.first << "," << sel.last << "] S+=" << format_ids(sel.s_plus)
     << " S-=" << format_ids(sel.s_minus) << " L-=" << format_ids(sel.l_minus);
  return os.str();
}

inline PathInstance sweep_instance(std::uint64_t seed, int max_n, int max_arcs) {
  Rng rng(seed);
  RandomShape shape;
  shape.n = static_cast<int>(rng.uniform_int(1, max_n));
  shape.max_arcs = max_arcs;
  return generate_random(shape, seed);
}

// Marginal of arc t under `sel`, recomputed from two max-flow evaluations.
inline std::optional<std::int64_t> oracle_marginal(const PathInstance& inst, const ArcSelection& sel, int id,
                                                   MarginalSide side) {
  auto base = maxflow_value(inst, sel);
  ArcSelection mod = sel;
  auto drop = [&](std::vector<int>& v) { v.erase(std::remove(v.begin(), v.end(), id), v.end()); };
  if (side == MarginalSide::Drop) {
    if (contains(sel.s_plus, id)) {
      drop(mod.s_plus);
    } else {
      drop(mod.l_minus);
      mod.s_minus.push_back(id);
    }
    auto other = maxflow_value(inst, mod);
    if (!base || !other) return std::nullopt;
    return *base - *other;
  }
  const auto& a = inst.arc(id);
  if (a.incoming()) {
    mod.s_plus.push_back(id);
  } else if (contains(sel.s_minus, id)) {
    drop(mod.s_minus);
    mod.l_minus.push_back(id);
  } else {
    return 0;
  }
  auto other = maxflow_value(inst, mod);
  if (!base || !other) return std::nullopt;
  return *other - *base;
}

}  // namespace detail

// Recursion value and every marginal against independent max-flow evaluations.
inline SuiteResult verify_profile_oracle(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"profile = max-flow"};
  std::vector<SuiteResult> parts(opt.equivalence_instances);
  detail::parallel_for(opt.equivalence_instances, opt.jobs, [&](std::int64_t k) {
    auto& part = parts[k];
    const std::uint64_t seed = detail::mix_seed(opt.seed, k);
    const PathInstance inst = transform_supply(detail::sweep_instance(seed, 8, 16));
    Rng rng(seed ^ 0x5bd1e995ULL);
    const ArcSelection sel = detail::random_selection(inst, rng);
    const auto flow = maxflow_value(inst, sel);
    if (!flow) return;  // fixed supply exceeds what the window can absorb
    const auto pr = opt.profile(inst, sel);
    ++part.checked;
    if (*flow != pr.value)
      part.fail("seed " + std::to_string(seed) + ": value " + std::to_string(pr.value) + " vs max-flow " +
                std::to_string(*flow));
    for (const auto& a : inst.arcs) {
      if (a.node < sel.first || a.node > sel.last || a.dummy_supply) continue;
      const bool in_objective = contains(sel.s_plus, a.id) || contains(sel.l_minus, a.id);
      const auto side = in_objective ? MarginalSide::Drop : MarginalSide::Add;
      const auto expect = detail::oracle_marginal(inst, sel, a.id, side);
      ++part.checked;
      if (!expect || *expect != marginal(inst, sel, pr, a.id, side))
        part.fail("seed " + std::to_string(seed) + ": marginal of arc " + std::to_string(a.id));
    }
  });
  for (auto& p : parts) {
    res.checked += p.checked;
    if (p.failures) {
      res.pass = false;
      res.failures += p.failures;
      if (res.first_failure.empty()) res.first_failure = p.first_failure;
    }
  }
  res.seconds = clock.seconds();
  return res;
}

// min(m_u, m_d) equals the cut value at every node.
inline SuiteResult verify_min_invariant(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"constant min-cut"};
  for (int k = 0; k < opt.equivalence_instances; ++k) {
    const std::uint64_t seed = detail::mix_seed(opt.seed, k);
    const PathInstance inst = transform_supply(detail::sweep_instance(seed, 8, 16));
    Rng rng(seed ^ 0x5bd1e995ULL);
    const ArcSelection sel = detail::random_selection(inst, rng);
    const auto pr = opt.profile(inst, sel);
    ++res.checked;
    if (!pr.constant_min()) res.fail("seed " + std::to_string(seed) + " " + detail::describe(sel));
  }
  res.seconds = clock.seconds();
  return res;
}

// Exact validity of every path and flow cover/pack inequality produced on small instances.
inline SuiteResult verify_validity(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"validity"};
  std::vector<SuiteResult> parts(opt.validity_instances);
  detail::parallel_for(opt.validity_instances, opt.jobs, [&](std::int64_t k) {
    auto& part = parts[k];
    const std::uint64_t seed = detail::mix_seed(opt.seed + 7, k);
    Rng rng(seed);
    RandomShape shape;
    shape.n = static_cast<int>(rng.uniform_int(1, 4));
    shape.max_arcs = 6;
    const PathInstance inst = transform_supply(generate_random(shape, seed));
    if (!check_a1(inst).empty()) return;
    for (int s = 0; s < opt.validity_selections; ++s) {
      ArcSelection sel = detail::random_selection(inst, rng);
      std::vector<LinearInequality> cuts;
      const auto pr = compute_profile(inst, sel);
      if (sel.mode == CoefficientMode::Cover) {
        if (is_path_cover(inst, sel, pr)) cuts.push_back(build_path_cover(inst, sel));
        if (merged_excess(inst, sel) > 0) cuts.push_back(build_flow_cover(inst, sel));
      } else {
        if (is_path_pack(inst, sel, pr)) cuts.push_back(build_path_pack(inst, sel));
        if (merged_excess(inst, sel) < 0) cuts.push_back(build_flow_pack(inst, sel));
      }
      for (const auto& cut : cuts) {
        ++part.checked;
        const auto cert = check_validity(inst, cut);
        if (!cert.valid)
          part.fail("seed " + std::to_string(seed) + ": " + dump(cut) + " violated by " +
                    format_rational(*cert.max_violation));
      }
    }
  });
  for (auto& p : parts) {
    res.checked += p.checked;
    if (p.failures) {
      res.pass = false;
      res.failures += p.failures;
      if (res.first_failure.empty()) res.first_failure = p.first_failure;
    }
  }
  res.seconds = clock.seconds();
  return res;
}

// Path coefficients never exceed the merged single-node ones.
inline SuiteResult verify_dominance(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"dominance"};
  std::int64_t tried = 0;
  for (std::int64_t k = 0; res.checked < opt.dominance_selections && tried < 100 * opt.dominance_selections; ++k) {
    ++tried;
    const std::uint64_t seed = detail::mix_seed(opt.seed + 11, k);
    const PathInstance inst = transform_supply(detail::sweep_instance(seed, 8, 16));
    Rng rng(seed);
    ArcSelection sel = detail::random_selection(inst, rng);
    const auto pr = opt.profile(inst, sel);
    if (sel.mode == CoefficientMode::Cover ? !is_path_cover(inst, sel, pr) : !is_path_pack(inst, sel, pr)) continue;
    ++res.checked;
    const std::int64_t excess = merged_excess(inst, sel);
    const std::int64_t merged = sel.mode == CoefficientMode::Cover ? pos_part(excess) : pos_part(-excess);
    for (int j = sel.first; j <= sel.last; ++j) {
      const std::int64_t v = sel.mode == CoefficientMode::Cover ? pr.lambda_at(j) : pr.mu_at(j);
      if (v > merged) {
        res.fail("seed " + std::to_string(seed) + " node " + std::to_string(j) + ": " + std::to_string(v) + " > " +
                 std::to_string(merged));
        break;
      }
    }
  }
  if (res.checked < opt.dominance_selections) res.fail("only " + std::to_string(res.checked) + " selections found");
  res.seconds = clock.seconds();
  return res;
}

// With at most one incoming arc left out and S- empty, the pack inequality equals the cover over all of E+.
inline SuiteResult verify_cover_pack_equivalence(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"cover/pack equivalence"};
  std::int64_t tried = 0, gap_cases = 0;
  for (std::int64_t k = 0; res.checked < opt.prop6_selections && tried < 1000 * opt.prop6_selections; ++k) {
    ++tried;
    const std::uint64_t seed = detail::mix_seed(opt.seed + 13, k);
    Rng rng(seed);
    RandomShape shape;
    shape.n = static_cast<int>(rng.uniform_int(1, 6));
    shape.max_arcs = 10;
    const PathInstance inst = transform_supply(generate_random(shape, seed));
    ArcSelection cover;
    cover.first = 1;
    cover.last = inst.n;
    for (const auto& a : inst.arcs)
      if (a.incoming()) cover.s_plus.push_back(a.id);
    if (cover.s_plus.empty() || !is_path_cover(inst, cover, compute_profile(inst, cover))) continue;
    ArcSelection pack = cover;
    pack.mode = CoefficientMode::Pack;
    std::vector<int> droppable;
    for (int id : cover.s_plus)
      if (!inst.arc(id).dummy_supply) droppable.push_back(id);
    if (!droppable.empty() && rng.coin(0.8)) {
      int out = droppable[rng.uniform_int(0, static_cast<int>(droppable.size()) - 1)];
      pack.s_plus.erase(std::remove(pack.s_plus.begin(), pack.s_plus.end(), out), pack.s_plus.end());
    }
    if (!is_path_pack(inst, pack, compute_profile(inst, pack))) continue;
    ++res.checked;
    const auto cover_cut = build_path_cover(inst, cover);
    const auto a = normalized(cover_cut);
    const auto b = normalized(build_path_pack(inst, pack));
    if (a == b) continue;
    res.fail("seed " + std::to_string(seed) + ": " + dump(a) + " vs " + dump(b));
    // mismatch explained by a nonzero cover coefficient on an arc the pack keeps in S+
    const bool kept_arc_coef = std::any_of(pack.s_plus.begin(), pack.s_plus.end(), [&](int id) {
      auto it = cover_cut.x.find(id);
      return it != cover_cut.x.end() && it->second != 0;
    });
    if (kept_arc_coef) ++gap_cases;
  }
  if (res.failures > 0)
    res.notes.push_back(std::to_string(gap_cases) + " of " + std::to_string(res.failures) +
                        " mismatches have (c_t - lambda)^+ > 0 on an arc kept in the pack's S+");
  if (res.checked < opt.prop6_selections) res.fail("only " + std::to_string(res.checked) + " selections found");
  res.seconds = clock.seconds();
  return res;
}

// ---- facet family ----

struct FacetCase {
  PathInstance inst;
  ArcSelection sel;
  LinearInequality cut;
  int face_dim = -1;
  int facet_dim = 0;
  bool trivial_face = false;  // tight set equals that of a bound or VUB, or the whole polytope
};

namespace detail {

// Standing assumptions checked directly: positive capacities, capacity bounds, every arc closable.
inline bool standing_assumptions(const PathInstance& inst) {
  const std::int64_t out_total = inst.capacity_sum(ArcDirection::Outgoing);
  const std::int64_t total = inst.demand_sum(1, inst.n);
  for (const auto& a : inst.arcs) {
    const int j = a.node;
    std::int64_t in_j = 0, out_j = 0;
    for (const auto& o : inst.arcs)
      if (o.node == j) (o.incoming() ? in_j : out_j) += o.capacity;
    if (a.incoming()) {
      if (a.capacity > total + out_total) return false;
      if (a.capacity > inst.b(j - 1) + inst.u(j) + pos_part(inst.d(j)) + out_j) return false;
    } else {
      if (a.capacity > inst.b(j) + inst.u(j - 1) + pos_part(-inst.d(j)) + in_j) return false;
    }
  }
  return check_a1(inst).empty();
}

inline bool trivial_face(const PathInstance& inst, const PolytopeVertices& verts, const std::vector<bool>& tight) {
  if (std::all_of(tight.begin(), tight.end(), [](bool b) { return b; })) return true;
  auto same = [&](const std::function<bool(const FeasiblePoint&)>& on) {
    for (std::size_t k = 0; k < verts.points.size(); ++k)
      if (on(verts.points[k]) != tight[k]) return false;
    return true;
  };
  for (std::size_t t = 0; t < inst.arcs.size(); ++t) {
    const Rational c(inst.arcs[t].capacity);
    if (same([&](const FeasiblePoint& p) { return p.y[t] == 0; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.y[t] == c * p.x[t]; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.x[t] == 1; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.x[t] == 0; })) return true;
  }
  for (int j = 1; j < inst.n; ++j) {
    const Rational u(inst.u(j)), b(inst.b(j));
    if (same([&](const FeasiblePoint& p) { return p.i[j - 1] == 0; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.i[j - 1] == u; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.r[j - 1] == 0; })) return true;
    if (same([&](const FeasiblePoint& p) { return p.r[j - 1] == b; })) return true;
  }
  return false;
}

// Calls fn for every instance of the family that satisfies the standing assumptions.
inline void for_each_family_instance(const FacetFamily& fam, const std::function<void(const PathInstance&)>& fn) {
  struct Kind {
    int node;
    bool incoming;
    std::int64_t cap;
  };
  for (int n = 1; n <= fam.max_n; ++n) {
    std::vector<Kind> kinds;
    for (int j = 1; j <= n; ++j)
      for (bool in : {true, false})
        for (auto c : fam.arc_caps) kinds.push_back({j, in, c});
    const int nk = static_cast<int>(kinds.size());
    for (int m = 1; m <= fam.max_arcs; ++m) {
      // nondecreasing index sequences = multisets of arc kinds
      std::vector<int> pick(m, 0);
      while (true) {
        int outgoing = 0;
        for (int k : pick) outgoing += kinds[k].incoming ? 0 : 1;
        if (outgoing <= fam.max_outgoing && outgoing < m) {
          const int edges = n - 1;
          std::vector<std::size_t> didx(n, 0), pidx(2 * edges, 0);
          while (true) {
            PathInstance inst;
            inst.n = n;
            for (int j = 0; j < n; ++j) inst.demand.push_back(fam.demands[didx[j]]);
            for (int e = 0; e < edges; ++e) {
              inst.fwd_cap.push_back(fam.path_caps[pidx[e]]);
              inst.bwd_cap.push_back(fam.path_caps[pidx[edges + e]]);
              inst.fwd_cost.push_back(Rational(1));
              inst.bwd_cost.push_back(Rational(1));
            }
            int id = 0;
            for (int k : pick) {
              const auto& kd = kinds[k];
              inst.arcs.push_back({++id, kd.node, kd.incoming ? ArcDirection::Incoming : ArcDirection::Outgoing, kd.cap,
                                   Rational(1), Rational(1), false});
            }
            if (standing_assumptions(inst)) fn(inst);
            // odometer over demands then path capacities
            int pos = 0;
            for (; pos < n; ++pos) {
              if (++didx[pos] < fam.demands.size()) break;
              didx[pos] = 0;
            }
            if (pos < n) continue;
            int q = 0;
            for (; q < 2 * edges; ++q) {
              if (++pidx[q] < fam.path_caps.size()) break;
              pidx[q] = 0;
            }
            if (q == 2 * edges) break;
          }
        }
        int i = m - 1;
        while (i >= 0 && pick[i] == nk - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int r = i + 1; r < m; ++r) pick[r] = pick[i];
      }
    }
  }
}

}  // namespace detail

struct FacetSweepStats {
  std::int64_t instances = 0;
  std::int64_t cuts = 0;
  std::int64_t facets = 0;
  std::int64_t necessary_failures = 0;
  std::int64_t sufficient_passes = 0;
  std::map<std::string, std::int64_t> necessary_exceptions;  // keyed by family and condition label
  std::int64_t necessary_exception_cuts = 0;
  std::int64_t necessary_exceptions_trivial = 0;
  std::int64_t sufficient_exceptions = 0;
  std::int64_t sufficient_exceptions_trivial = 0;
  std::vector<std::string> samples;
};

struct FacetRecord {
  const PathInstance& inst;
  const ArcSelection& sel;
  const LinearInequality& cut;
  int face_dim;
  int facet_dim;
  const ConditionReport& necessary;
  const SufficientReport& sufficient;
};

using FacetRecordFn = std::function<void(const FacetRecord&)>;

// Every path cover and pack on the full path, for every S+ (and S- when outgoing arcs exist).
inline FacetSweepStats facet_sweep(const FacetFamily& fam, std::size_t max_samples = 8,
                                   const FacetRecordFn& on_record = nullptr) {
  FacetSweepStats st;
  std::map<std::string, std::size_t> per_kind;
  auto sample = [&](const std::string& kind, const std::string& s) {
    if (st.samples.size() < max_samples && per_kind[kind]++ < 1) st.samples.push_back(s);
  };
  detail::for_each_family_instance(fam, [&](const PathInstance& inst) {
    const auto verts = enumerate_vertices(inst);
    const int dim = affine_dimension(verts.points);
    const int facet_dim = 2 * static_cast<int>(inst.arcs.size()) + inst.n - 3;
    ++st.instances;
    if (dim != facet_dim + 1) {
      sample("dim", "dim(P) = " + std::to_string(dim) + " on an instance meeting the standing assumptions");
      return;
    }
    std::vector<int> in, out;
    for (const auto& a : inst.arcs) (a.incoming() ? in : out).push_back(a.id);
    for (std::uint32_t smask = 0; smask < (1u << in.size()); ++smask) {
      for (std::uint32_t omask = 0; omask < (1u << out.size()); ++omask) {
        for (auto mode : {CoefficientMode::Cover, CoefficientMode::Pack}) {
          ArcSelection sel;
          sel.first = 1;
          sel.last = inst.n;
          sel.mode = mode;
          for (std::size_t k = 0; k < in.size(); ++k)
            if (smask >> k & 1u) sel.s_plus.push_back(in[k]);
          for (std::size_t k = 0; k < out.size(); ++k)
            if (omask >> k & 1u) sel.s_minus.push_back(out[k]);
          const auto pr = compute_profile(inst, sel);
          const bool cover = mode == CoefficientMode::Cover;
          if (cover ? !is_path_cover(inst, sel, pr) : !is_path_pack(inst, sel, pr)) continue;
          const auto cut = cover ? build_path_cover(inst, sel) : build_path_pack(inst, sel);
          std::vector<bool> tight;
          for (const auto& p : verts.points) tight.push_back(cut.lhs<Rational>(inst, p) == cut.rhs);
          std::vector<FeasiblePoint> on;
          for (std::size_t k = 0; k < tight.size(); ++k)
            if (tight[k]) on.push_back(verts.points[k]);
          const int fd = affine_dimension(on);
          const bool facet = fd == facet_dim;
          ++st.cuts;
          if (facet) ++st.facets;
          const auto nec = cover ? check_cover_necessary(inst, sel) : check_pack_necessary(inst, sel);
          const std::string fam_tag = cover ? "cover" : "pack";
          if (!nec.all()) {
            ++st.necessary_failures;
            if (facet) {
              const bool triv = detail::trivial_face(inst, verts, tight);
              ++st.necessary_exception_cuts;
              if (triv) ++st.necessary_exceptions_trivial;
              std::string failed;
              for (const auto& c : nec.conditions)
                if (!c.holds) {
                  ++st.necessary_exceptions[fam_tag + " (" + c.label + ")"];
                  failed += (failed.empty() ? "" : ",") + c.label;
                }
              sample("nec" + fam_tag + (triv ? "t" : "n"),
                     fam_tag + " fails (" + failed + ") on a " + (triv ? "bound/VUB facet: " : "facet: ") + dump(cut));
            }
          }
          const auto suf = cover ? check_cover_sufficient(inst, sel) : check_pack_sufficient(inst, sel);
          if (on_record) on_record({inst, sel, cut, fd, facet_dim, nec, suf});
          if (suf.verdict == Verdict::Holds) {
            ++st.sufficient_passes;
            if (!facet) {
              ++st.sufficient_exceptions;
              const bool triv = detail::trivial_face(inst, verts, tight);
              if (triv) ++st.sufficient_exceptions_trivial;
              sample("suf" + fam_tag + (triv ? "t" : "n"), fam_tag + " sufficient on a face of dim " + std::to_string(fd) +
                                                                 (triv ? " (improper or bound face): " : ": ") + dump(cut));
            }
          }
        }
      }
    }
  });
  return st;
}

inline SuiteResult verify_facets(const VerifyOptions& opt, const FacetRecordFn& on_record = nullptr) {
  detail::Stopwatch clock;
  SuiteResult res{"facet concordance"};
  const auto st = facet_sweep(opt.facets, 8, on_record);
  res.checked = st.cuts;
  std::ostringstream head;
  head << st.instances << " instances, " << st.cuts << " cuts, " << st.facets << " facets; necessary failures "
       << st.necessary_failures << ", sufficient passes " << st.sufficient_passes;
  res.notes.push_back(head.str());
  if (st.necessary_exception_cuts > 0) {
    res.pass = false;
    res.failures += st.necessary_exception_cuts;
    res.first_failure = "(a) " + std::to_string(st.necessary_exception_cuts) + " facets fail a necessary condition (" +
                        std::to_string(st.necessary_exceptions_trivial) + " of them bound or VUB faces)";
    for (const auto& [label, count] : st.necessary_exceptions)
      res.notes.push_back("facets failing " + label + ": " + std::to_string(count));
  }
  if (st.sufficient_exceptions > 0) {
    res.pass = false;
    res.failures += st.sufficient_exceptions;
    const std::string msg = "(b) " + std::to_string(st.sufficient_exceptions) +
                            " sufficient passes on non-facets (" + std::to_string(st.sufficient_exceptions_trivial) +
                            " of them the whole polytope or a bound face)";
    if (res.first_failure.empty()) res.first_failure = msg;
    res.notes.push_back(msg);
  }
  for (const auto& s : st.samples) res.notes.push_back("example: " + s);
  res.seconds = clock.seconds();
  return res;
}

// ---- worked lot-sizing example ----

struct ExampleReconstruction {
  bool found = false;
  PathInstance inst;
  ArcSelection cover, pack;  // S+ = {2,3} and S+ = {3} on the full path
};

// First instance (grid step 5) matching the published min-cut values for both objective sets.
inline ExampleReconstruction reconstruct_example() {
  const std::vector<std::int64_t> cover_mu{45, 65, 60, 45}, cover_md{40, 40, 40, 40};
  const std::vector<std::int64_t> pack_mu{30, 30, 30, 30}, pack_md{40, 40, 30, 30};
  ExampleReconstruction out;
  out.cover.first = out.pack.first = 1;
  out.cover.last = out.pack.last = 4;
  out.cover.s_plus = {2, 3};
  out.pack.s_plus = {3};
  out.pack.mode = CoefficientMode::Pack;
  std::vector<std::int64_t> steps{5, 10, 15, 20, 25, 30, 35, 40};
  std::vector<int> idx(6, 0);
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; a + b <= 6; ++b)
      for (int c = 1; a + b + c <= 7; ++c) {
        const std::vector<std::int64_t> d{5 * a, 5 * b, 5 * c, 5 * (8 - a - b - c)};
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          const std::vector<std::int64_t> u{steps[idx[0]], steps[idx[1]], steps[idx[2]]};
          const std::vector<std::int64_t> bw{steps[idx[3]], steps[idx[4]], steps[idx[5]]};
          const auto p1 = profile_from_aggregates(1, d, u, bw, {0, 35, 30, 0}, {0, 0, 0, 0});
          const auto p2 = profile_from_aggregates(1, d, u, bw, {0, 0, 30, 0}, {0, 0, 0, 0});
          if (p1.m_u == cover_mu && p1.m_d == cover_md && p2.m_u == pack_mu && p2.m_d == pack_md) {
            for (std::int64_t c1 = 10; c1 <= 40; c1 += 5)
              for (std::int64_t c4 = 10; c4 <= 40; c4 += 5) {
                PathInstance inst;
                inst.n = 4;
                inst.demand = d;
                inst.fwd_cap = u;
                inst.bwd_cap = bw;
                inst.fwd_cost.assign(3, Rational(1));
                inst.bwd_cost.assign(3, Rational(1));
                const std::int64_t caps[4] = {c1, 35, 30, c4};
                for (int t = 0; t < 4; ++t)
                  inst.arcs.push_back({t + 1, t + 1, ArcDirection::Incoming, caps[t], Rational(1), Rational(1), false});
                if (!detail::standing_assumptions(inst)) continue;
                out.found = true;
                out.inst = std::move(inst);
                return out;
              }
          }
          int k = 0;
          for (; k < 6; ++k) {
            if (++idx[k] < static_cast<int>(steps.size())) break;
            idx[k] = 0;
          }
          if (k == 6) break;
        }
      }
  return out;
}

inline LinearInequality make_inequality(std::map<int, Rational> y, std::map<int, Rational> x, Rational rhs) {
  LinearInequality c;
  c.y = std::move(y);
  c.x = std::move(x);
  c.rhs = rhs;
  return c;
}

inline SuiteResult verify_example(bool with_facets = true) {
  detail::Stopwatch clock;
  SuiteResult res{"worked example"};
  const auto ex = reconstruct_example();
  if (!ex.found) {
    res.fail("no instance on the search grid matches the published min-cut values");
    res.seconds = clock.seconds();
    return res;
  }
  const auto& inst = ex.inst;
  {
    std::ostringstream os;
    os << "d=(" << inst.d(1) << "," << inst.d(2) << "," << inst.d(3) << "," << inst.d(4) << ") u=(" << inst.u(1) << ","
       << inst.u(2) << "," << inst.u(3) << ") b=(" << inst.b(1) << "," << inst.b(2) << "," << inst.b(3) << ") c=("
       << inst.arcs[0].capacity << ",35,30," << inst.arcs[3].capacity << ")";
    res.notes.push_back("reconstruction " + os.str());
  }
  const Rational one(1);
  auto expect = [&](const std::string& what, const LinearInequality& got, const LinearInequality& want) {
    ++res.checked;
    if (!(got == want)) res.fail(what + ": got " + dump(got) + ", want " + dump(want));
  };
  const auto pr = compute_profile(inst, ex.cover);
  ++res.checked;
  if (pr.lambda != std::vector<std::int64_t>{5, 25, 20, 5}) res.fail("cover lambda differs from (5,25,20,5)");
  expect("path cover", build_path_cover(inst, ex.cover),
         make_inequality({{2, one}, {3, one}}, {{2, Rational(-10)}, {3, Rational(-10)}}, Rational(20)));
  expect("path pack", build_path_pack(inst, ex.pack),
         make_inequality({{1, one}, {2, one}, {3, one}, {4, one}}, {{1, Rational(-10)}, {2, Rational(-10)}}, Rational(30)));
  expect("flow cover", build_flow_cover(inst, ex.cover),
         make_inequality({{2, one}, {3, one}}, {{2, Rational(-10)}, {3, Rational(-5)}}, Rational(25)));
  expect("flow pack", build_flow_pack(inst, ex.pack),
         make_inequality({{1, one}, {2, one}, {3, one}, {4, one}},
                         {{1, Rational(-10)}, {2, Rational(-10)}, {4, Rational(-10)}}, Rational(30)));
  if (with_facets) {
    const auto verts = enumerate_vertices(inst);
    const int facet_dim = 2 * 4 + 4 - 3;
    const int fc = face_dimension(inst, verts, build_path_cover(inst, ex.cover));
    const int fp = face_dimension(inst, verts, build_path_pack(inst, ex.pack));
    res.notes.push_back("face dimensions on this reconstruction: cover " + std::to_string(fc) + ", pack " +
                        std::to_string(fp) + " (facet " + std::to_string(facet_dim) + ")");
  }
  res.seconds = clock.seconds();
  return res;
}

// Branch-and-cut optimum against pattern enumeration, with and without cuts; kept cuts never separate the optimum.
inline SuiteResult verify_solver(const VerifyOptions& opt) {
  detail::Stopwatch clock;
  SuiteResult res{"solver = oracle"};
  std::vector<SuiteResult> parts(opt.solver_instances);
  detail::parallel_for(opt.solver_instances, opt.jobs, [&](std::int64_t k) {
    auto& part = parts[k];
    const std::uint64_t seed = detail::mix_seed(opt.seed + 17, k);
    Rng rng(seed);
    RandomShape shape;
    shape.n = static_cast<int>(rng.uniform_int(1, 4));
    shape.max_arcs = 8;
    const PathInstance inst = generate_random(shape, seed);
    const auto oracle = mip_oracle(inst);
    const PathInstance work = transform_supply(inst);
    for (auto arm : {CutArm::None, CutArm::Spi, CutArm::Mspi}) {
      BranchAndCutConfig cfg;
      cfg.cuts = arm;
      cfg.keep_cuts = true;
      cfg.time_limit = 60;
      const auto rep = branch_and_cut(inst, cfg);
      ++part.checked;
      const std::string tag = "seed " + std::to_string(seed) + " arm " + to_string(arm) + ": ";
      if (!oracle.feasible) {
        if (rep.status != "infeasible") part.fail(tag + "oracle infeasible, solver " + rep.status);
        continue;
      }
      const double opt_value = to_double(oracle.optimum);
      if (rep.status != "optimal" || std::abs(rep.z_ub - opt_value) > 1e-6 * std::max(1.0, std::abs(opt_value))) {
        part.fail(tag + "solver " + rep.status + " " + std::to_string(rep.z_ub) + " vs oracle " +
                  std::to_string(opt_value));
        continue;
      }
      if (rep.z_root > opt_value + 1e-6 * std::max(1.0, std::abs(opt_value)))
        part.fail(tag + "root bound above the optimum");
      for (const auto& cut : rep.cuts) {
        ++part.checked;
        if (cut.lhs<Rational>(work, oracle.point) > cut.rhs) part.fail(tag + "cut separates the optimum: " + dump(cut));
      }
    }
  });
  for (auto& p : parts) {
    res.checked += p.checked;
    if (p.failures) {
      res.pass = false;
      res.failures += p.failures;
      if (res.first_failure.empty()) res.first_failure = p.first_failure;
    }
  }
  res.seconds = clock.seconds();
  return res;
}

inline const std::vector<std::string>& verify_scopes() {
  static const std::vector<std::string> scopes{"profile", "validity", "example", "dominance",
                                               "equivalence", "facets", "solver"};
  return scopes;
}

// Runs one scope ("all" runs every scope in order).
inline std::vector<SuiteResult> run_verify(const std::string& scope, const VerifyOptions& opt,
                                           const FacetRecordFn& on_record = nullptr) {
  std::vector<SuiteResult> out;
  auto want = [&](const char* s) { return scope == "all" || scope == s; };
  if (want("profile")) {
    out.push_back(verify_profile_oracle(opt));
    out.push_back(verify_min_invariant(opt));
  }
  if (want("validity")) out.push_back(verify_validity(opt));
  if (want("example")) out.push_back(verify_example());
  if (want("dominance")) out.push_back(verify_dominance(opt));
  if (want("equivalence")) out.push_back(verify_cover_pack_equivalence(opt));
  if (want("facets")) out.push_back(verify_facets(opt, on_record));
  if (want("solver")) out.push_back(verify_solver(opt));
  if (out.empty()) throw std::invalid_argument("unknown verify scope '" + scope + "'");
  return out;
}

}  // namespace pathcuts
