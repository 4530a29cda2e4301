#pragma once

#include "pathcuts/generate.hpp"
#include "pathcuts/solve.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace pathcuts {

struct ExperimentArm {
  std::string name;
  CutArm cuts = CutArm::Spi;
  double max_path_frac = 0.75;
  int max_path_len = 0;
};

inline ExperimentArm make_arm(CutArm cuts, double max_path_frac) {
  return {to_string(cuts), cuts, max_path_frac, 0};
}

// Path-size sweep: p = 1, p <= 5, p <= n/2, p <= n, all with path coefficients.
inline std::vector<ExperimentArm> path_size_arms() {
  return {{"p=1", CutArm::Spi, 1.0, 1}, {"p<=5", CutArm::Spi, 1.0, 5}, {"p<=0.5n", CutArm::Spi, 0.5, 0},
          {"p<=n", CutArm::Spi, 1.0, 0}};
}

struct ExperimentConfig {
  std::vector<int> sizes{50};
  std::vector<std::int64_t> fixed_factors{100, 1000};
  std::vector<std::int64_t> capacity_factors{5};
  int seeds = 5;
  std::uint64_t first_seed = 1;
  std::vector<ExperimentArm> arms{make_arm(CutArm::Spi, 0.5), make_arm(CutArm::Mspi, 0.5)};
  SeparationConfig separation;  // path limits are overridden per arm
  int cut_rounds = 50;
  double time_limit = 15.0;  // per instance and arm
  std::int64_t node_limit = -1;
  bool rounding = true;  // reference upper bounds only; root bounds do not depend on it
  int jobs = 1;
};

struct ExperimentRow {
  int n = 0;
  std::int64_t f = 0;
  std::int64_t c = 0;
  std::uint64_t seed = 0;
  std::string arm;
  std::string error;          // non-empty when the run threw
  BranchAndCutReport report;  // gaps use the best upper bound over all arms of the instance
};

inline const char* experiment_csv_header() {
  return "n,f,c,seed,arm,status,z_init,z_root,z_ub,z_lb,init_gap,root_gap,gap_imp,end_gap,cuts_added,cut_rounds,"
         "nodes_explored,wall_time,error";
}

struct CellSummary {
  int n = 0;
  std::int64_t f = 0, c = 0;
  std::string arm;
  int runs = 0;
  int unsolved = 0;
  double init_gap = 0, gap_imp = 0, cuts = 0, nodes = 0, time = 0, end_gap = 0;
  int gap_count = 0, end_gap_count = 0;
};

struct ExperimentSummary {
  std::vector<ExperimentRow> rows;

  double mean_gap_imp(const std::string& arm) const {
    double sum = 0;
    int count = 0;
    for (const auto& r : rows)
      if (r.arm == arm && std::isfinite(r.report.gap_imp)) {
        sum += r.report.gap_imp;
        ++count;
      }
    return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
  }

  double total_time() const {
    double t = 0;
    for (const auto& r : rows) t += r.report.wall_time;
    return t;
  }

  // Per (n, f, c, arm) averages in first-seen order.
  std::vector<CellSummary> cells() const {
    std::vector<CellSummary> out;
    std::map<std::tuple<int, std::int64_t, std::int64_t, std::string>, std::size_t> where;
    for (const auto& r : rows) {
      auto key = std::make_tuple(r.n, r.f, r.c, r.arm);
      auto it = where.find(key);
      if (it == where.end()) {
        it = where.emplace(key, out.size()).first;
        CellSummary cell;
        cell.n = r.n;
        cell.f = r.f;
        cell.c = r.c;
        cell.arm = r.arm;
        out.push_back(cell);
      }
      auto& cell = out[it->second];
      ++cell.runs;
      const auto& rep = r.report;
      if (!r.error.empty() || rep.status != "optimal") ++cell.unsolved;
      if (std::isfinite(rep.gap_imp)) {
        cell.init_gap += rep.init_gap;
        cell.gap_imp += rep.gap_imp;
        ++cell.gap_count;
      }
      if (std::isfinite(rep.end_gap)) {
        cell.end_gap += rep.end_gap;
        ++cell.end_gap_count;
      }
      cell.cuts += static_cast<double>(rep.cuts_added);
      cell.nodes += static_cast<double>(rep.nodes_explored);
      cell.time += rep.wall_time;
    }
    for (auto& cell : out) {
      if (cell.gap_count) {
        cell.init_gap /= cell.gap_count;
        cell.gap_imp /= cell.gap_count;
      }
      if (cell.end_gap_count) cell.end_gap /= cell.end_gap_count;
      cell.cuts /= cell.runs;
      cell.nodes /= cell.runs;
      cell.time /= cell.runs;
    }
    return out;
  }
};

namespace detail {

inline std::string csv_field(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace detail

inline std::string experiment_csv_row(const ExperimentRow& row) {
  const auto& r = row.report;
  using detail::csv_field;
  std::ostringstream os;
  os << row.n << ',' << row.f << ',' << row.c << ',' << row.seed << ',' << row.arm << ',' << r.status << ','
     << csv_field(r.z_init) << ',' << csv_field(r.z_root) << ',' << csv_field(r.z_ub) << ',' << csv_field(r.z_lb) << ','
     << csv_field(r.init_gap) << ',' << csv_field(r.root_gap) << ',' << csv_field(r.gap_imp) << ','
     << csv_field(r.end_gap) << ',' << r.cuts_added << ',' << r.cut_rounds << ',' << r.nodes_explored << ','
     << csv_field(r.wall_time) << ',' << row.error;
  return os.str();
}

// Aligned text table of cell averages; gaps and counts rounded to integers, end gap as a fraction.
inline std::string render_cells(const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "n" << std::setw(7) << "f" << std::setw(4) << "c" << std::setw(10) << "arm"
     << std::right << std::setw(9) << "initgap" << std::setw(9) << "gapimp" << std::setw(8) << "cuts" << std::setw(9)
     << "nodes" << std::setw(9) << "time" << std::setw(9) << "endgap" << std::setw(9) << "unsolved" << '\n';
  auto num = [](double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
  };
  for (const auto& c : cells) {
    os << std::left << std::setw(6) << c.n << std::setw(7) << c.f << std::setw(4) << c.c << std::setw(10) << c.arm
       << std::right << std::setw(9) << (c.gap_count ? num(c.init_gap, 0) : "-") << std::setw(9)
       << (c.gap_count ? num(c.gap_imp, 0) : "-") << std::setw(8) << num(c.cuts, 0) << std::setw(9) << num(c.nodes, 0)
       << std::setw(9) << num(c.time, 1) << std::setw(9) << (c.end_gap_count ? num(c.end_gap, 3) : "-")
       << std::setw(9) << c.unsolved << '\n';
  }
  return os.str();
}

inline ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  struct Task {
    int n;
    std::int64_t f, c;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : cfg.sizes)
    for (auto f : cfg.fixed_factors)
      for (auto c : cfg.capacity_factors)
        for (int k = 0; k < cfg.seeds; ++k) tasks.push_back({n, f, c, cfg.first_seed + static_cast<std::uint64_t>(k)});

  std::vector<std::vector<ExperimentRow>> results(tasks.size());
  auto run_task = [&](std::size_t k) {
    const auto& t = tasks[k];
    auto& rows = results[k];
    double best_ub = std::numeric_limits<double>::infinity();
    for (const auto& arm : cfg.arms) {
      ExperimentRow row{t.n, t.f, t.c, t.seed, arm.name, "", {}};
      try {
        const PathInstance inst = generate_lotsizing(t.n, t.f, t.c, t.seed);
        BranchAndCutConfig bc;
        bc.cuts = arm.cuts;
        bc.separation = cfg.separation;
        bc.separation.max_path_frac = arm.max_path_frac;
        bc.separation.max_path_len = arm.max_path_len;
        bc.cut_rounds = cfg.cut_rounds;
        bc.time_limit = cfg.time_limit;
        bc.node_limit = cfg.node_limit;
        bc.rounding = cfg.rounding;
        row.report = branch_and_cut(inst, bc);
        best_ub = std::min(best_ub, row.report.z_ub);
      } catch (const std::exception& e) {
        row.error = e.what();
        row.report.status = "error";
      }
      rows.push_back(std::move(row));
    }
    for (auto& row : rows)
      if (row.error.empty()) compute_gaps(row.report, best_ub);
  };

  if (cfg.jobs <= 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) run_task(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < cfg.jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) run_task(k);
      });
    for (auto& th : pool) th.join();
  }
  ExperimentSummary out;
  for (auto& rows : results)
    for (auto& row : rows) out.rows.push_back(std::move(row));
  return out;
}

}  // namespace pathcuts
