#pragma once

#include "pathcuts/cuts.hpp"
#include "pathcuts/instance.hpp"
#include "pathcuts/mincut.hpp"
#include "pathcuts/solve.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pathcuts {

using nlohmann::json;

inline json instance_to_json(const PathInstance& inst) {
  json arcs = json::array();
  for (const auto& a : inst.arcs) {
    json o = {{"id", a.id},
              {"node", a.node},
              {"dir", a.incoming() ? "in" : "out"},
              {"cap", a.capacity},
              {"fixed_cost", format_rational(a.fixed_cost)},
              {"var_cost", format_rational(a.var_cost)}};
    if (a.dummy_supply) o["dummy"] = true;
    arcs.push_back(std::move(o));
  }
  json fc = json::array(), bc = json::array();
  for (const auto& c : inst.fwd_cost) fc.push_back(format_rational(c));
  for (const auto& c : inst.bwd_cost) bc.push_back(format_rational(c));
  return json{{"n", inst.n},     {"demand", inst.demand}, {"fwd_cap", inst.fwd_cap}, {"bwd_cap", inst.bwd_cap},
              {"arcs", arcs},    {"fwd_cost", fc},        {"bwd_cost", bc}};
}

inline Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw std::invalid_argument("expected a rational string");
}

inline PathInstance instance_from_json(const json& j) {
  PathInstance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.demand = j.at("demand").get<std::vector<std::int64_t>>();
    inst.fwd_cap = j.at("fwd_cap").get<std::vector<std::int64_t>>();
    inst.bwd_cap = j.at("bwd_cap").get<std::vector<std::int64_t>>();
    for (const auto& c : j.at("fwd_cost")) inst.fwd_cost.push_back(json_rational(c));
    for (const auto& c : j.at("bwd_cost")) inst.bwd_cost.push_back(json_rational(c));
    for (const auto& a : j.at("arcs")) {
      NonPathArc arc;
      arc.id = a.at("id").get<int>();
      arc.node = a.at("node").get<int>();
      const auto dir = a.at("dir").get<std::string>();
      if (dir != "in" && dir != "out") throw std::invalid_argument("arc dir must be \"in\" or \"out\"");
      arc.direction = dir == "in" ? ArcDirection::Incoming : ArcDirection::Outgoing;
      arc.capacity = a.at("cap").get<std::int64_t>();
      arc.fixed_cost = json_rational(a.at("fixed_cost"));
      arc.var_cost = json_rational(a.at("var_cost"));
      arc.dummy_supply = a.value("dummy", false);
      inst.arcs.push_back(arc);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  if (inst.fwd_cost.size() != static_cast<std::size_t>(std::max(0, inst.n - 1)) ||
      inst.bwd_cost.size() != inst.fwd_cost.size())
    throw std::invalid_argument("path cost vectors must have n-1 entries");
  inst.validate();
  return inst;
}

inline std::string instance_to_string(const PathInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline PathInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return instance_from_json(j);
}

inline void write_instance(const PathInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_string(inst);
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline json profile_to_json(const MinCutProfile& pr) {
  return json{{"first", pr.first},     {"last", pr.last},       {"alpha_u", pr.alpha_u}, {"alpha_d", pr.alpha_d},
              {"beta_u", pr.beta_u},   {"beta_d", pr.beta_d},   {"m_u", pr.m_u},         {"m_d", pr.m_d},
              {"lambda", pr.lambda},   {"mu", pr.mu},           {"value", pr.value}};
}

inline json cut_to_json(const LinearInequality& c) {
  auto terms = [](const std::map<int, Rational>& m) {
    json o = json::object();
    for (const auto& [k, v] : m) o[std::to_string(k)] = format_rational(v);
    return o;
  };
  const auto& s = c.selection;
  return json{{"family", to_string(c.family)},
              {"y", terms(c.y)},
              {"x", terms(c.x)},
              {"i", terms(c.i)},
              {"r", terms(c.r)},
              {"rhs", format_rational(c.rhs)},
              {"window", {s.first, s.last}},
              {"s_plus", s.s_plus},
              {"s_minus", s.s_minus},
              {"l_minus", s.l_minus}};
}

namespace detail {

inline json number_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

inline std::string csv_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return "";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace detail

inline json report_to_json(const BranchAndCutReport& r) {
  using detail::number_or_null;
  return json{{"status", r.status},
              {"z_init", number_or_null(r.z_init)},
              {"z_root", number_or_null(r.z_root)},
              {"z_ub", number_or_null(r.z_ub)},
              {"z_lb", number_or_null(r.z_lb)},
              {"init_gap", number_or_null(r.init_gap)},
              {"root_gap", number_or_null(r.root_gap)},
              {"gap_imp", number_or_null(r.gap_imp)},
              {"end_gap", number_or_null(r.end_gap)},
              {"cuts_added", r.cuts_added},
              {"cut_rounds", r.cut_rounds},
              {"nodes_explored", r.nodes_explored},
              {"wall_time", r.wall_time}};
}

inline const char* report_csv_header() {
  return "status,z_init,z_root,z_ub,z_lb,init_gap,root_gap,gap_imp,end_gap,cuts_added,cut_rounds,nodes_explored,"
         "wall_time";
}

inline std::string report_csv_row(const BranchAndCutReport& r) {
  using detail::csv_number;
  std::ostringstream os;
  os << r.status << ',' << csv_number(r.z_init) << ',' << csv_number(r.z_root) << ',' << csv_number(r.z_ub) << ','
     << csv_number(r.z_lb) << ',' << csv_number(r.init_gap) << ',' << csv_number(r.root_gap) << ','
     << csv_number(r.gap_imp) << ',' << csv_number(r.end_gap) << ',' << r.cuts_added << ',' << r.cut_rounds << ','
     << r.nodes_explored << ',' << csv_number(r.wall_time);
  return os.str();
}

}  // namespace pathcuts
