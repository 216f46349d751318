// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <clscnd/bundled.hpp>
#include <clscnd/eps_constraint.hpp>
#include <clscnd/generator.hpp>
#include <clscnd/instance_io.hpp>
#include <clscnd/moga.hpp>
#include <clscnd/oracle.hpp>

#include "fixtures.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace clscnd;
using clscnd::testing::unit_instance;
using clscnd::testing::unit_solution;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

/// Collects failures for one criterion; the first few are echoed with the verdict.
struct Check {
  std::size_t cases = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

int failed = 0;

void report(const char* id, const char* name, const Check& c, const std::string& detail) {
  std::printf("%s %s %s: %zu checks, %s\n", c.ok() ? "PASS" : "FAIL", id, name, c.cases, detail.c_str());
  for (std::size_t k = 0; k < std::min<std::size_t>(c.failures.size(), 5); ++k)
    std::printf("     %s\n", c.failures[k].c_str());
  std::fflush(stdout);
  if (!c.ok()) ++failed;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// ---------------------------------------------------------------------------

void oracle_equivalence() {
  const auto t0 = Clock::now();
  Check c;
  std::vector<std::pair<std::string, NetworkInstance>> cases{{"bundled", bundled_case()}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rng = detail::make_stream({seed, 2024});
    GeneratorSpec spec;
    spec.seed = seed;
    auto pick = [&] { return 1 + detail::uniform_index(rng, 2); };
    spec.dims = {pick(), pick(), pick(), pick(), pick(), pick(), pick(), pick()};
    cases.emplace_back("generated seed " + std::to_string(seed), generate(spec));
  }
  for (const auto& [label, inst] : cases) {
    const auto table = payoff_table(inst);
    std::vector<std::pair<ObjectiveMode, std::optional<double>>> modes{{ObjectiveMode::cost, std::nullopt},
                                                                       {ObjectiveMode::emissions, std::nullopt}};
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
      modes.push_back({ObjectiveMode::cost_with_emission_cap, table.ideal.f2 + s * (table.nadir.f2 - table.ideal.f2)});
    for (const auto& [mode, cap] : modes) {
      const auto m = solve_milp(build_milp(inst, mode, cap).lp);
      const auto o = brute_force_milp(inst, mode, cap);
      const bool ok = m.status == o.status && (m.status != SolveStatus::optimal || close_rel(m.objective, o.objective, 1e-6));
      c.expect(ok, label + ": solver " + fmt("%.9g", m.objective) + " vs oracle " + fmt("%.9g", o.objective));
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + fmt("%.2f", secs) + " s");
  report("C1", "oracle equivalence", c, std::to_string(cases.size()) + " instances x 7 modes in " + fmt("%.2f", secs) + " s");
}

// ---------------------------------------------------------------------------

LinearProgram random_feasible_lp(std::mt19937_64& rng) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> nvars(2, 20), nrows(1, 15), relpick(0, 2);
  std::uniform_real_distribution<double> coef(-5, 5), point(0, 5), slack(0, 2), unit(0, 1);
  const int n = nvars(rng), m = nrows(rng);
  LinearProgram lp;
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    x0[j] = point(rng);
    const bool bounded = unit(rng) < 0.6;
    const double cost = bounded ? coef(rng) : std::abs(coef(rng));
    lp.add_variable("x" + std::to_string(j), cost, 0.0, bounded ? x0[j] + 1.0 + slack(rng) : inf);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> a(n);
    double ax = 0.0;
    for (int j = 0; j < n; ++j) {
      a[j] = unit(rng) < 0.3 ? 0.0 : coef(rng);
      ax += a[j] * x0[j];
    }
    const int rel = relpick(rng);
    const Relation r = rel == 0 ? Relation::less_equal : rel == 1 ? Relation::greater_equal : Relation::equal;
    const double rhs = rel == 0 ? ax + slack(rng) : rel == 1 ? ax - slack(rng) : ax;
    lp.add_row(Row{a, r, rhs, {}});
  }
  return lp;
}

double slackness_residual(const LinearProgram& lp, const LpSolution& s) {
  double worst = 0.0;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    double ax = 0.0;
    for (std::size_t j = 0; j < lp.num_variables(); ++j) ax += lp.rows[r].coefficients[j] * s.x[j];
    worst = std::max(worst, std::abs(s.duals[r] * (ax - lp.rows[r].rhs)));
  }
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const double d = s.reduced_costs[j];
    if (d > 0) worst = std::max(worst, d * (s.x[j] - lp.lower[j]));
    if (d < 0) worst = std::max(worst, -d * (lp.upper[j] - s.x[j]));
  }
  return worst;
}

void lp_soundness() {
  Check c;
  std::mt19937_64 rng(20240);
  double worst_gap = 0.0, worst_cs = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto lp = random_feasible_lp(rng);
    const auto s = solve_lp(lp);
    if (s.status != SolveStatus::optimal) {
      c.expect(false, "case " + std::to_string(k) + ": status " + to_string(s.status));
      continue;
    }
    const double gap = std::abs(s.objective - dual_objective(lp, s)) / std::max(1.0, std::abs(s.objective));
    const double cs = slackness_residual(lp, s);
    worst_gap = std::max(worst_gap, gap);
    worst_cs = std::max(worst_cs, cs);
    c.expect(gap <= 1e-8, "case " + std::to_string(k) + ": duality gap " + fmt("%.3g", gap));
    c.expect(cs <= 1e-6, "case " + std::to_string(k) + ": slackness residual " + fmt("%.3g", cs));
  }
  report("C2", "LP soundness", c, "20 programs, max gap " + fmt("%.2e", worst_gap) + ", max slackness " + fmt("%.2e", worst_cs));
}

// ---------------------------------------------------------------------------

void eps_correctness() {
  Check c;
  const auto inst = bundled_tradeoff_case();
  EpsConfig cfg;
  cfg.grid_points = 20;
  const auto t0 = Clock::now();
  const auto front = sweep(inst, cfg);
  const double secs = seconds_since(t0);
  c.expect(!front.empty(), "empty front");
  for (std::size_t k = 0; k < front.size(); ++k) {
    const auto& e = front[k];
    const auto tag = "point " + std::to_string(k + 1);
    c.expect(check_feasibility(inst, e.solution, 1e-6).feasible(), tag + " infeasible");
    c.expect(e.f2 <= e.epsilon_or_gen + 1e-6, tag + " exceeds its cap");
    if (k > 0) {
      c.expect(front[k].f1 >= front[k - 1].f1, tag + " f1 not ascending");
      c.expect(front[k].f2 < front[k - 1].f2, tag + " f2 not strictly descending");
    }
  }
  c.expect(secs < 10.0, "runtime " + fmt("%.2f", secs) + " s");
  report("C3", "epsilon-constraint correctness", c,
         std::to_string(front.size()) + " points in " + fmt("%.2f", secs) + " s");
}

// ---------------------------------------------------------------------------

void method_agreement() {
  Check c;
  const auto inst = bundled_tradeoff_case();
  EpsConfig eps;
  eps.grid_points = 20;
  const auto exact = sweep(inst, eps);
  const auto t0 = Clock::now();
  GaConfig ga;
  ga.seed = 1;
  const auto approx = evolve(inst, ga);
  const double secs = seconds_since(t0);
  c.expect(!approx.empty(), "GA front is empty");
  for (std::size_t k = 0; k < approx.size(); ++k)
    c.expect(check_feasibility(inst, approx[k].solution, 1e-6).feasible(), "GA point " + std::to_string(k + 1) + " infeasible");
  const auto m = compare(exact, approx);
  c.expect(m.hypervolume_ratio >= 0.95, "hypervolume ratio " + fmt("%.4f", m.hypervolume_ratio));
  c.expect(secs < 30.0, "runtime " + fmt("%.2f", secs) + " s");
  report("C4", "method agreement", c,
         "HV(GA)/HV(exact) = " + fmt("%.4f", m.hypervolume_ratio) + ", " + std::to_string(approx.size()) +
             " GA points in " + fmt("%.2f", secs) + " s");
}

// ---------------------------------------------------------------------------

void evaluator_exactness() {
  Check c;
  auto inst = unit_instance();
  const auto sol = unit_solution(inst);
  const double cost = evaluate_cost(inst, sol).total;
  const double co2 = evaluate_emissions(inst, sol).total;
  inst.include_assembly_emissions = true;
  const double co2_assembly = evaluate_emissions(inst, sol).total;
  c.expect(std::abs(cost - 348.0) <= 1e-9, "cost " + fmt("%.12g", cost));
  c.expect(std::abs(co2 - 46.0) <= 1e-9, "emissions " + fmt("%.12g", co2));
  c.expect(std::abs(co2_assembly - 56.0) <= 1e-9, "emissions with assembly " + fmt("%.12g", co2_assembly));
  report("C5", "evaluator exactness", c,
         "cost " + fmt("%g", cost) + ", emissions " + fmt("%g", co2) + " (" + fmt("%g", co2_assembly) + " with assembly)");
}

// ---------------------------------------------------------------------------

void determinism() {
  Check c;
  const auto dir = fs::temp_directory_path() / "clscnd_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string instance = std::string(CLSCND_DATA_DIR) + "/bundled_tradeoff.json";
  for (int seed : {1, 2, 3}) {
    std::vector<std::string> outputs;
    for (int threads : {1, 2})
      for (int repeat : {0, 1}) {
        const auto out = (dir / ("s" + std::to_string(seed) + "_t" + std::to_string(threads) + "_r" +
                                 std::to_string(repeat) + ".json")).string();
        const auto cmd = std::string(CLSCND_CLI_PATH) + " --threads " + std::to_string(threads) + " solve ga " +
                         instance + " --seed " + std::to_string(seed) + " --brief --out " + out + " >/dev/null";
        const int status = std::system(cmd.c_str());
        c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "seed " + std::to_string(seed) + " threads " +
                                                                    std::to_string(threads) + ": command failed");
        outputs.push_back(fs::exists(out) ? read_text_file(out) : "");
      }
    c.expect(!outputs[0].empty(), "seed " + std::to_string(seed) + ": no front written");
    for (std::size_t k = 1; k < outputs.size(); ++k)
      c.expect(outputs[k] == outputs[0], "seed " + std::to_string(seed) + ": run " + std::to_string(k + 1) + " differs");
  }
  fs::remove_all(dir);
  report("C6", "determinism", c, "3 seeds x threads {1, 2} x 2 runs, front files compared byte for byte");
}

// ---------------------------------------------------------------------------

std::vector<ObjectivePoint> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<ObjectivePoint> p(n);
  for (auto& x : p) {
    x.f1 = std::round(u(rng) * 4) / 4;  // coarse grid to force ties and duplicates
    x.f2 = std::round(u(rng) * 4) / 4;
  }
  return p;
}

NetworkInstance random_instance(std::mt19937_64& rng) {
  GeneratorSpec spec;
  spec.seed = rng();
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  spec.dims = {dim(rng), dim(rng), dim(rng), dim(rng), dim(rng), dim(rng), dim(rng), dim(rng)};
  return generate(spec);
}

FlowSolution random_solution(const NetworkInstance& inst, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 500.0);
  auto s = FlowSolution::zeros(inst.dims);
  for (auto* v : {&s.factory_open, &s.warehouse_open, &s.disassembly_open})
    for (auto& x : *v) x = static_cast<double>(rng() % 2);
  for (Tensor3* t : {&s.factory_warehouse, &s.warehouse_customer, &s.customer_disassembly, &s.disassembly_factory})
    for (auto& x : t->flat()) x = u(rng);
  return s;
}

void property_suites() {
  constexpr int n = 100;
  std::mt19937_64 rng(777);
  std::ostringstream detail;
  Check c;

  int idem = 0;
  for (int k = 0; k < n; ++k, ++idem) {
    const auto p = random_points(rng, 1 + rng() % 40);
    const auto once = filter_dominated(p);
    c.expect(filter_dominated(once) == once, "filter idempotence case " + std::to_string(k));
  }

  int hv = 0;
  for (int k = 0; k < n; ++k, ++hv) {
    auto p = random_points(rng, 1 + rng() % 30);
    const ObjectivePoint ref{11.0, 11.0};
    const double before = hypervolume(p, ref);
    p.push_back(random_points(rng, 1)[0]);
    c.expect(hypervolume(p, ref) >= before - 1e-12, "hypervolume monotonicity case " + std::to_string(k));
  }

  int scaling = 0;
  for (int k = 0; k < n; ++k, ++scaling) {
    const auto inst = random_instance(rng);
    const auto sol = random_solution(inst, rng);
    const double s = 0.5 + static_cast<double>(rng() % 1000) / 100.0;
    auto scaled = inst;
    for (TransportLink* link : {&scaled.factory_warehouse, &scaled.warehouse_customer, &scaled.customer_disassembly,
                                &scaled.disassembly_factory}) {
      for (auto& v : link->unit_cost.flat()) v *= s;
      for (auto& v : link->emission_factor) v *= s;
    }
    for (auto* v : {&scaled.factory_fixed_cost, &scaled.warehouse_fixed_cost, &scaled.disassembly_fixed_cost,
                    &scaled.production_cost, &scaled.handling_cost, &scaled.collection_cost, &scaled.disassembly_cost,
                    &scaled.remanufacturing_cost, &scaled.production_emission, &scaled.assembly_emission,
                    &scaled.handling_emission, &scaled.disassembly_emission, &scaled.remanufacturing_emission})
      for (auto& x : *v) x *= s;
    const double c0 = evaluate_cost(inst, sol).total, c1 = evaluate_cost(scaled, sol).total;
    const double e0 = evaluate_emissions(inst, sol).total, e1 = evaluate_emissions(scaled, sol).total;
    c.expect(close_rel(c1, s * c0, 1e-12), "cost scaling case " + std::to_string(k));
    c.expect(close_rel(e1, s * e0, 1e-12), "emission scaling case " + std::to_string(k));
  }

  int reliability = 0;
  for (int k = 0; k < n; ++k, ++reliability) {
    auto inst = random_instance(rng);
    auto sol = random_solution(inst, rng);
    for (auto& x : sol.warehouse_customer.flat()) x += 1.0;
    auto lower = inst, higher = inst;
    lower.failure_rate = static_cast<double>(rng() % 100) / 1000.0;
    higher.failure_rate = lower.failure_rate + 0.001 + static_cast<double>(rng() % 100) / 1000.0;
    c.expect(evaluate_cost(higher, sol).total < evaluate_cost(lower, sol).total,
             "cost not decreasing in lambda, case " + std::to_string(k));
    c.expect(evaluate_emissions(higher, sol).total < evaluate_emissions(lower, sol).total,
             "emissions not decreasing in lambda, case " + std::to_string(k));
  }

  int roundtrip = 0;
  for (int k = 0; k < n; ++k, ++roundtrip) {
    auto inst = random_instance(rng);
    inst.include_assembly_emissions = k % 2 == 0;
    const auto text = save_instance(inst);
    const auto back = load_instance(text);
    c.expect(back == inst && save_instance(back) == text, "instance round-trip case " + std::to_string(k));
    const auto sol = random_solution(inst, rng);
    c.expect(solution_from_json(solution_to_json(sol)) == sol, "solution round-trip case " + std::to_string(k));
  }

  detail << "filter idempotence " << idem << ", HV monotonicity " << hv << ", scaling " << scaling
         << ", reliability " << reliability << ", round-trip " << roundtrip << " cases";
  report("C7", "property suites", c, detail.str());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{oracle_equivalence, lp_soundness,  eps_correctness,
                                                    method_agreement,   evaluator_exactness, determinism,
                                                    property_suites};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception: %s)\n", e.what());
      ++failed;
    }
  }
  std::printf("%s: %d criterion(s) failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}
