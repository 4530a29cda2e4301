#include "pathcuts/experiment.hpp"
#include "pathcuts/io.hpp"
#include "pathcuts/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pathcuts;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& item : split(s)) {
    std::istringstream in(item);
    T v;
    if (!(in >> v) || !in.eof()) throw UsageError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct SeparationFlags {
  double max_path_frac = 0.75;
  double eps = 1e-6;
  int max_cuts = 200;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-path-frac", max_path_frac, "Longest window as a fraction of n")->capture_default_str();
    cmd->add_option("--sep-eps", eps, "Minimum violation of a separated cut")->capture_default_str();
    cmd->add_option("--max-cuts-per-round", max_cuts, "Cuts kept per separation round")->capture_default_str();
  }
  SeparationConfig config() const {
    SeparationConfig s;
    s.max_path_frac = max_path_frac;
    s.eps = eps;
    s.max_cuts = max_cuts;
    return s;
  }
};

// ---- generate ----

struct GenerateArgs {
  std::string kind = "lotsizing";
  int n = 50;
  std::int64_t f = 100;
  std::int64_t c = 5;
  std::uint64_t seed = 1;
  int max_arcs = 8;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  PathInstance inst;
  if (a.kind == "lotsizing") {
    inst = generate_lotsizing(a.n, a.f, a.c, a.seed);
  } else if (a.kind == "random") {
    RandomShape shape;
    shape.n = a.n;
    shape.max_arcs = a.max_arcs;
    inst = generate_random(shape, a.seed);
  } else {
    throw UsageError("unknown instance kind '" + a.kind + "'");
  }
  emit(a.out, instance_to_string(inst));
  return kOk;
}

// ---- cut ----

struct CutArgs {
  std::string instance;
  int first = 1;
  int last = 0;
  std::string s_plus, s_minus, l_minus;
  std::string mode = "cover";
  std::string family = "path";
  bool dump_profile = false;
  bool check = false;
  bool facets = false;
  std::string out;
};

int cmd_cut(const CutArgs& a) {
  const PathInstance inst = transform_supply(read_instance(a.instance));
  ArcSelection sel;
  sel.first = a.first;
  sel.last = a.last > 0 ? a.last : inst.n;
  sel.s_plus = parse_list<int>(a.s_plus);
  sel.s_minus = parse_list<int>(a.s_minus);
  sel.l_minus = parse_list<int>(a.l_minus);
  // dummy supply arcs in the window always belong to S+
  for (const auto& arc : inst.arcs)
    if (arc.dummy_supply && arc.node >= sel.first && arc.node <= sel.last && !contains(sel.s_plus, arc.id))
      sel.s_plus.push_back(arc.id);
  if (a.mode != "cover" && a.mode != "pack") throw UsageError("--mode must be cover or pack");
  sel.mode = a.mode == "cover" ? CoefficientMode::Cover : CoefficientMode::Pack;
  const bool cover = sel.mode == CoefficientMode::Cover;

  LinearInequality cut;
  if (a.family == "path")
    cut = cover ? build_path_cover(inst, sel) : build_path_pack(inst, sel);
  else if (a.family == "flow")
    cut = cover ? build_flow_cover(inst, sel) : build_flow_pack(inst, sel);
  else
    throw UsageError("--family must be path or flow");

  json out{{"cut", cut_to_json(cut)}, {"text", dump(cut)}};
  if (a.dump_profile) out["profile"] = profile_to_json(compute_profile(inst, sel));
  if (a.check) {
    const auto cert = check_validity(inst, cut);
    out["valid"] = cert.valid;
    if (cert.max_violation) out["max_violation"] = format_rational(*cert.max_violation);
  }
  if (a.facets) {
    const auto nec = cover ? check_cover_necessary(inst, sel) : check_pack_necessary(inst, sel);
    const auto suf = cover ? check_cover_sufficient(inst, sel) : check_pack_sufficient(inst, sel);
    json conds = json::object();
    for (const auto& c : nec.conditions) conds[c.label] = c.holds;
    out["necessary"] = conds;
    out["sufficient"] = to_string(suf.verdict);
    out["face_dimension"] = face_dimension(inst, cut);
    out["facet_dimension"] = 2 * static_cast<int>(inst.arcs.size()) + inst.n - 3;
  }
  emit(a.out, out.dump(2) + "\n");
  return kOk;
}

// ---- solve ----

struct SolveArgs {
  std::string instance;
  int n = 50;
  std::int64_t f = 100;
  std::int64_t c = 5;
  std::uint64_t seed = 1;
  std::string cuts = "spi";
  double time_limit = 3600;
  std::int64_t node_limit = -1;
  int cut_rounds = 50;
  int cut_depth = 0;
  bool root_only = false;
  bool rounding = false;
  std::string format = "json";
  SeparationFlags sep;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const PathInstance inst = a.instance.empty() ? generate_lotsizing(a.n, a.f, a.c, a.seed) : read_instance(a.instance);
  BranchAndCutConfig cfg;
  cfg.cuts = parse_cut_arm(a.cuts);
  cfg.separation = a.sep.config();
  cfg.time_limit = a.time_limit;
  cfg.node_limit = a.node_limit;
  cfg.cut_rounds = a.cut_rounds;
  cfg.cut_depth = a.cut_depth;
  cfg.root_only = a.root_only;
  cfg.rounding = a.rounding;
  const auto rep = branch_and_cut(inst, cfg);
  if (a.format == "json")
    emit(a.out, report_to_json(rep).dump(2) + "\n");
  else if (a.format == "csv")
    emit(a.out, std::string(report_csv_header()) + "\n" + report_csv_row(rep) + "\n");
  else
    throw UsageError("--format must be json or csv");
  return kOk;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string sizes = "50";
  std::string fixed = "100,1000";
  std::string capacity = "5";
  int seeds = 5;
  std::uint64_t first_seed = 1;
  std::string arms = "spi,mspi";
  std::string preset;
  double time_limit = 15;
  std::int64_t node_limit = -1;
  int cut_rounds = 50;
  bool no_rounding = false;
  int jobs = 1;
  SeparationFlags sep;
  std::string csv;
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  cfg.sizes = parse_list<int>(a.sizes);
  cfg.fixed_factors = parse_list<std::int64_t>(a.fixed);
  cfg.capacity_factors = parse_list<std::int64_t>(a.capacity);
  cfg.seeds = a.seeds;
  cfg.first_seed = a.first_seed;
  cfg.separation = a.sep.config();
  cfg.time_limit = a.time_limit;
  cfg.node_limit = a.node_limit;
  cfg.cut_rounds = a.cut_rounds;
  cfg.rounding = !a.no_rounding;
  cfg.jobs = a.jobs;
  if (a.preset == "path-size") {
    cfg.arms = path_size_arms();
  } else if (!a.preset.empty()) {
    throw UsageError("unknown preset '" + a.preset + "'");
  } else {
    cfg.arms.clear();
    for (const auto& name : split(a.arms)) cfg.arms.push_back(make_arm(parse_cut_arm(name), a.sep.max_path_frac));
  }
  const auto summary = run_experiment(cfg);
  std::ostringstream csv;
  csv << experiment_csv_header() << '\n';
  for (const auto& row : summary.rows) csv << experiment_csv_row(row) << '\n';
  if (!a.csv.empty()) emit(a.csv, csv.str());
  std::cout << render_cells(summary.cells());
  if (a.csv.empty()) std::cout << '\n' << csv.str();
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string scope = "all";
  std::uint64_t seed = 1;
  int jobs = 1;
  bool inject_fault = false;
  std::string records;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.jobs = a.jobs;
  if (a.inject_fault) opt.profile = faulty_profile;
  std::ofstream records;
  FacetRecordFn on_record;
  if (!a.records.empty()) {
    records.open(a.records, std::ios::binary);
    if (!records) throw std::runtime_error("cannot write " + a.records);
    on_record = [&](const FacetRecord& r) {
      json conds = json::object();
      for (const auto& c : r.necessary.conditions) conds[c.label] = c.holds;
      json rec{{"instance", instance_to_json(r.inst)},
               {"cut", cut_to_json(r.cut)},
               {"face_dimension", r.face_dim},
               {"facet_dimension", r.facet_dim},
               {"facet", r.face_dim == r.facet_dim},
               {"necessary", conds},
               {"sufficient", to_string(r.sufficient.verdict)}};
      records << rec.dump() << '\n';
    };
  }
  const auto results = run_verify(a.scope, opt, on_record);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  checked=" << r.checked << " failures=" << r.failures
              << " time=" << std::fixed << std::setprecision(2) << r.seconds << "s\n";
    if (!r.pass) std::cout << "  first failure: " << r.first_failure << '\n';
    for (const auto& note : r.notes) std::cout << "  " << note << '\n';
    ok = ok && r.pass;
  }
  return ok ? kOk : kVerifyFailed;
}

// ---- report ----

struct ReportArgs {
  std::string csv;
};

int cmd_report(const ReportArgs& a) {
  std::ifstream in(a.csv);
  if (!in) throw UsageError("cannot read " + a.csv);
  std::string line;
  if (!std::getline(in, line)) throw UsageError(a.csv + " is empty");
  const auto header = split(line);
  auto col = [&](const char* name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UsageError(a.csv + " lacks column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cn = col("n"), cf = col("f"), cc = col("c"), cs = col("seed"), ca = col("arm"), cst = col("status");
  const std::size_t czi = col("z_init"), czr = col("z_root"), czu = col("z_ub"), czl = col("z_lb");
  const std::size_t ccut = col("cuts_added"), cnode = col("nodes_explored"), ct = col("wall_time");
  auto number = [](const std::string& s) {
    return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
  };
  ExperimentSummary summary;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    while (f.size() < header.size()) f.emplace_back();
    ExperimentRow row;
    row.n = std::stoi(f[cn]);
    row.f = std::stoll(f[cf]);
    row.c = std::stoll(f[cc]);
    row.seed = std::stoull(f[cs]);
    row.arm = f[ca];
    auto& r = row.report;
    r.status = f[cst];
    r.z_init = number(f[czi]);
    r.z_root = number(f[czr]);
    r.z_ub = number(f[czu]);
    r.z_lb = number(f[czl]);
    r.cuts_added = static_cast<std::int64_t>(number(f[ccut]));
    r.nodes_explored = static_cast<std::int64_t>(number(f[cnode]));
    r.wall_time = number(f[ct]);
    summary.rows.push_back(std::move(row));
  }
  // recompute gaps from the stored bounds against the best upper bound per instance
  std::map<std::tuple<int, std::int64_t, std::int64_t, std::uint64_t>, double> best;
  for (const auto& row : summary.rows) {
    auto key = std::make_tuple(row.n, row.f, row.c, row.seed);
    auto it = best.emplace(key, std::numeric_limits<double>::infinity()).first;
    if (std::isfinite(row.report.z_ub)) it->second = std::min(it->second, row.report.z_ub);
  }
  for (auto& row : summary.rows) compute_gaps(row.report, best[std::make_tuple(row.n, row.f, row.c, row.seed)]);
  std::cout << render_cells(summary.cells());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path cover and path pack inequalities for fixed-charge flows on paths"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generated instance as JSON");
  g->add_option("--kind", gen.kind, "lotsizing or random")->capture_default_str();
  g->add_option("--n", gen.n, "Path length")->capture_default_str();
  g->add_option("--f", gen.f, "Fixed-to-variable cost ratio (lotsizing)")->capture_default_str();
  g->add_option("--c", gen.c, "Capacity factor (lotsizing)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--max-arcs", gen.max_arcs, "Arc count bound (random)")->capture_default_str();
  g->add_option("-o,--out", gen.out, "Output file (default stdout)");

  CutArgs cut;
  auto* c = app.add_subcommand("cut", "Build one inequality for a selection");
  c->add_option("instance", cut.instance, "Instance JSON")->required();
  c->add_option("--first", cut.first)->capture_default_str();
  c->add_option("--last", cut.last, "Window end (default n)");
  c->add_option("--s-plus", cut.s_plus, "Comma-separated arc ids");
  c->add_option("--s-minus", cut.s_minus, "Comma-separated arc ids");
  c->add_option("--l-minus", cut.l_minus, "Comma-separated arc ids");
  c->add_option("--mode", cut.mode, "cover or pack")->capture_default_str();
  c->add_option("--family", cut.family, "path or flow")->capture_default_str();
  c->add_flag("--dump-profile", cut.dump_profile, "Include the min-cut recursions");
  c->add_flag("--check", cut.check, "Exact validity check (small instances)");
  c->add_flag("--facets", cut.facets, "Facet conditions and face dimension (tiny instances)");
  c->add_option("-o,--out", cut.out);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Branch-and-cut on one instance");
  s->add_option("--instance", solve.instance, "Instance JSON (default: generated lot-sizing)");
  s->add_option("--n", solve.n)->capture_default_str();
  s->add_option("--f", solve.f)->capture_default_str();
  s->add_option("--c", solve.c)->capture_default_str();
  s->add_option("--seed", solve.seed)->capture_default_str();
  s->add_option("--cuts", solve.cuts, "spi, mspi, none or cpxlike")->capture_default_str();
  s->add_option("--time-limit", solve.time_limit)->capture_default_str();
  s->add_option("--node-limit", solve.node_limit)->capture_default_str();
  s->add_option("--cut-rounds", solve.cut_rounds)->capture_default_str();
  s->add_option("--cut-depth", solve.cut_depth, "Separate at tree nodes up to this depth")->capture_default_str();
  s->add_flag("--root-only", solve.root_only);
  s->add_flag("--rounding", solve.rounding, "Enable the open-and-resolve incumbent heuristic");
  s->add_option("--format", solve.format, "json or csv")->capture_default_str();
  solve.sep.attach(s);
  s->add_option("-o,--out", solve.out);

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Gap-improvement sweep over generated lot-sizing instances");
  e->add_option("--n", exp.sizes, "Comma-separated path lengths")->capture_default_str();
  e->add_option("--f", exp.fixed, "Comma-separated cost ratios")->capture_default_str();
  e->add_option("--c", exp.capacity, "Comma-separated capacity factors")->capture_default_str();
  e->add_option("--seeds", exp.seeds, "Instances per cell")->capture_default_str();
  e->add_option("--first-seed", exp.first_seed)->capture_default_str();
  e->add_option("--arms", exp.arms, "Comma-separated cut modes")->capture_default_str();
  e->add_option("--preset", exp.preset, "path-size: arms p=1, p<=5, p<=0.5n, p<=n");
  e->add_option("--time-limit", exp.time_limit, "Seconds per instance and arm")->capture_default_str();
  e->add_option("--node-limit", exp.node_limit)->capture_default_str();
  e->add_option("--cut-rounds", exp.cut_rounds)->capture_default_str();
  e->add_flag("--no-rounding", exp.no_rounding, "Incumbents from integral LP nodes only");
  e->add_option("--jobs", exp.jobs)->capture_default_str();
  exp.sep.attach(e);
  e->add_option("--csv", exp.csv, "Per-instance CSV output");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the oracle suites");
  v->add_option("--scope", ver.scope, "all, profile, validity, example, dominance, equivalence, facets or solver")
      ->capture_default_str();
  v->add_option("--seed", ver.seed)->capture_default_str();
  v->add_option("--jobs", ver.jobs)->capture_default_str();
  v->add_flag("--inject-fault", ver.inject_fault, "Use a deliberately broken recursion");
  v->add_option("--records", ver.records, "JSON lines, one per facet-family cut");

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Cell averages from an experiment CSV");
  r->add_option("csv", rep.csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*g) return cmd_generate(gen);
    if (*c) return cmd_cut(cut);
    if (*s) return cmd_solve(solve);
    if (*e) return cmd_experiment(exp);
    if (*v) return cmd_verify(ver);
    if (*r) return cmd_report(rep);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
