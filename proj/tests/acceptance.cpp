// One PASS/FAIL line per acceptance criterion. Exit status is 0 unless --strict is given.
#include "pathcuts/experiment.hpp"
#include "pathcuts/verify.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pathcuts;

namespace {

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  std::vector<std::string> notes;
};

std::string secs(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << s << "s";
  return os.str();
}

Line from_suite(int id, const SuiteResult& r, double limit) {
  Line l{id, r.name, r.pass, "", r.notes};
  std::ostringstream os;
  os << "checked " << r.checked << ", failures " << r.failures << ", " << secs(r.seconds);
  if (limit > 0) {
    os << " (limit " << secs(limit) << ")";
    if (r.seconds >= limit) l.pass = false;
  }
  if (!r.first_failure.empty()) os << "; first: " << r.first_failure;
  l.detail = os.str();
  return l;
}

Line experiment_line() {
  ExperimentConfig cfg;
  cfg.sizes = {50};
  cfg.fixed_factors = {100, 1000};
  cfg.capacity_factors = {5};
  cfg.seeds = 5;
  cfg.arms = {make_arm(CutArm::Spi, 0.5), make_arm(CutArm::Mspi, 0.5)};
  cfg.time_limit = 15;
  const auto start = std::chrono::steady_clock::now();
  const auto s = run_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double spi = s.mean_gap_imp("spi"), mspi = s.mean_gap_imp("mspi");
  const bool level = std::isfinite(spi) && spi >= 85.0;
  const bool spread = std::isfinite(spi) && std::isfinite(mspi) && spi >= mspi + 10.0;
  const bool fast = wall < 600.0;
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << "mean gap imp spi " << spi << " (need >= 85: " << (level ? "ok" : "no")
     << "), mspi " << mspi << " (spread " << spi - mspi << ", need >= 10: " << (spread ? "ok" : "no") << "), "
     << secs(wall) << " (limit 600.0s)";
  Line l{8, "desk-scale experiment", level && spread && fast, os.str(), {}};
  std::istringstream table(render_cells(s.cells()));
  for (std::string row; std::getline(table, row);) l.notes.push_back(row);
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int k = 1; k < argc; ++k)
    if (std::strcmp(argv[k], "--strict") == 0) strict = true;

  VerifyOptions opt;
  std::vector<Line> lines;
  auto emit = [&](Line l) {
    std::cout << "criterion " << l.id << ": " << (l.pass ? "PASS" : "FAIL") << "  " << l.name << "  " << l.detail
              << '\n';
    for (const auto& n : l.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
    lines.push_back(std::move(l));
  };

  auto profile = verify_profile_oracle(opt);
  auto faulty = opt;
  faulty.profile = faulty_profile;
  const auto mutant = verify_profile_oracle(faulty);
  profile.notes.push_back(std::string("off-by-one recursion mutant ") + (mutant.pass ? "NOT detected" : "detected") +
                          " (" + std::to_string(mutant.failures) + " failures)");
  auto l1 = from_suite(1, profile, 10.0);
  l1.pass = l1.pass && !mutant.pass;
  emit(l1);
  emit(from_suite(2, verify_min_invariant(opt), 0));
  emit(from_suite(3, verify_validity(opt), 120.0));
  emit(from_suite(4, verify_example(true), 0));
  emit(from_suite(5, verify_dominance(opt), 0));
  emit(from_suite(6, verify_cover_pack_equivalence(opt), 0));
  emit(from_suite(7, verify_facets(opt), 600.0));
  emit(experiment_line());
  emit(from_suite(9, verify_solver(opt), 0));

  int passed = 0;
  for (const auto& l : lines) passed += l.pass;
  std::cout << "summary: " << passed << "/" << lines.size() << " criteria pass\n";
  return strict && passed != static_cast<int>(lines.size()) ? 1 : 0;
}
