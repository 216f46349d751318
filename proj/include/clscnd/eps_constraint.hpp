#ifndef CLSCND_EPS_CONSTRAINT_HPP
#define CLSCND_EPS_CONSTRAINT_HPP

#include <clscnd/detail/parallel.hpp>
#include <clscnd/instance_io.hpp>
#include <clscnd/lp.hpp>
#include <clscnd/model.hpp>
#include <clscnd/network_lp.hpp>
#include <clscnd/pareto.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace clscnd {

/// Solves a (mixed-integer) program. Defaults to solve_milp; the oracle
/// plugs in exhaustive enumeration.
using MilpEngine = std::function<LpSolution(const LinearProgram&, const SolverConfig&)>;

struct EpsConfig {
  std::size_t grid_points = 20;
  Objective constrained = Objective::emissions;
  SolverConfig solver;
  IndicatorMode indicators = IndicatorMode::binary;
  std::size_t threads = 0;  // 0: all cores
  MilpEngine engine;

  void validate() const {
    if (grid_points < 2) throw InvalidParameter("grid point count must be >= 2");
  }
};

/// Result of a lexicographic solve: the primary objective minimized, then
/// the other objective minimized with the primary held at its optimum.
struct AnchorSolution {
  FlowSolution solution;
  ObjectivePoint point;
  bool proven = true;
};

struct PayoffTable {
  ObjectivePoint ideal;
  ObjectivePoint nadir;
  AnchorSolution cost_anchor;      // minimizes f1
  AnchorSolution emission_anchor;  // minimizes f2
};

namespace detail {

inline double value_of(const ObjectivePoint& p, Objective o) { return o == Objective::cost ? p.f1 : p.f2; }

inline Objective other(Objective o) { return o == Objective::cost ? Objective::emissions : Objective::cost; }

inline std::optional<double>& cap_of(ObjectiveSpec& spec, Objective o) {
  return o == Objective::cost ? spec.cost_cap : spec.emission_cap;
}

/// Lexicographic tie-break slack for the second stage.
inline double lexicographic_slack(double optimum) { return 1e-9 * std::max(1.0, std::abs(optimum)); }

}  // namespace detail

/// Minimizes `primary` under an optional cap on the other objective, then
/// polishes the other objective. Returns nullopt when the capped problem is
/// infeasible or when a solver limit hit before any incumbent was found (then
/// `*limited` is set). A node-limited solve with an incumbent is returned unproven.
inline std::optional<AnchorSolution> lexicographic_solve(const NetworkInstance& inst, Objective primary,
                                                         std::optional<double> cap, const EpsConfig& config,
                                                         bool* limited = nullptr) {
  const MilpEngine engine = config.engine ? config.engine : MilpEngine(solve_milp);
  ObjectiveSpec spec;
  spec.minimize = primary;
  detail::cap_of(spec, detail::other(primary)) = cap;
  const auto first_prog = build_milp(inst, spec, config.indicators);
  const auto first = engine(first_prog.lp, config.solver);
  if (first.x.empty()) {
    if (first.status == SolveStatus::iteration_limit && limited) *limited = true;
    if (first.status == SolveStatus::infeasible || first.status == SolveStatus::iteration_limit) return std::nullopt;
    throw Error(std::string("lexicographic_solve: solver returned ") + to_string(first.status));
  }

  AnchorSolution out;
  out.proven = first.status == SolveStatus::optimal;
  LpSolution best = first;
  NetworkProgram best_prog = first_prog;

  ObjectiveSpec polish = spec;
  polish.minimize = detail::other(primary);
  detail::cap_of(polish, primary) = first.objective + detail::lexicographic_slack(first.objective);
  auto polish_prog = build_milp(inst, polish, config.indicators);
  const auto second = engine(polish_prog.lp, config.solver);
  if (!second.x.empty()) {
    best = second;
    best_prog = std::move(polish_prog);
    out.proven = out.proven && second.status == SolveStatus::optimal;
  }
  out.solution = best_prog.decode(best.x);
  out.point = {evaluate_cost(inst, out.solution).total, evaluate_emissions(inst, out.solution).total};
  return out;
}

inline PayoffTable payoff_table(const NetworkInstance& inst, const EpsConfig& config = {}) {
  config.validate();
  bool limited = false;
  auto by_cost = lexicographic_solve(inst, Objective::cost, std::nullopt, config, &limited);
  auto by_emis = lexicographic_solve(inst, Objective::emissions, std::nullopt, config, &limited);
  if (!by_cost && !by_emis) {
    if (limited) throw SolverLimit("payoff table: solver limit reached before any feasible point was found");
    throw ModelInfeasible("no indicator configuration admits a feasible flow");
  }
  if (!by_cost) by_cost = by_emis;
  if (!by_emis) by_emis = by_cost;
  PayoffTable t;
  t.cost_anchor = std::move(*by_cost);
  t.emission_anchor = std::move(*by_emis);
  const auto& a = t.cost_anchor.point;
  const auto& b = t.emission_anchor.point;
  t.ideal = {std::min(a.f1, b.f1), std::min(a.f2, b.f2)};
  t.nadir = {std::max(a.f1, b.f1), std::max(a.f2, b.f2)};
  return t;
}

/// Inclusive uniform grid over [lo, hi] with n points; the last point is hi exactly.
inline std::vector<double> epsilon_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k)
    grid[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return grid;
}

inline std::map<std::string, std::string> describe(const EpsConfig& c) {
  return {{"method", "eps"},
          {"grid_points", std::to_string(c.grid_points)},
          {"constrained", c.constrained == Objective::emissions ? "f2" : "f1"},
          {"indicators", c.indicators == IndicatorMode::binary ? "binary" : "relaxed"},
          {"max_nodes", std::to_string(c.solver.max_nodes)},
          {"max_iterations", std::to_string(c.solver.max_iterations)}};
}

/// Traces the front by sweeping a cap on the constrained objective over the
/// payoff-table range. Grid points are solved in parallel; the result depends
/// only on the grid order.
inline ParetoFront sweep(const NetworkInstance& inst, const EpsConfig& config, const PayoffTable& table,
                         const std::string& method = "eps") {
  config.validate();
  const Objective cons = config.constrained;
  const Objective main = detail::other(cons);
  const auto grid = epsilon_grid(detail::value_of(table.ideal, cons), detail::value_of(table.nadir, cons),
                                 config.grid_points);
  std::vector<std::optional<AnchorSolution>> solved(grid.size());
  std::vector<char> limited(grid.size(), 0);
  detail::parallel_for(grid.size(), config.threads, [&](std::size_t k) {
    bool hit = false;
    solved[k] = lexicographic_solve(inst, main, grid[k], config, &hit);
    limited[k] = hit;
  });

  FrontMetadata meta;
  meta.instance_hash = instance_hash(inst);
  meta.config = describe(config);
  meta.relaxed = config.indicators == IndicatorMode::relaxed;
  std::vector<FrontEntry> entries;
  std::size_t unproven = 0, skipped = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!solved[k]) {
      ++(limited[k] ? unproven : skipped);
      continue;
    }
    auto& s = *solved[k];
    if (!s.proven) ++unproven;
    entries.push_back(FrontEntry{s.point.f1, s.point.f2, std::move(s.solution), method, grid[k], s.proven});
  }
  meta.exact = unproven == 0;
  if (unproven > 0 || skipped > 0)
    meta.diagnostic = std::to_string(unproven) + " grid point(s) hit a solver limit, " + std::to_string(skipped) +
                      " infeasible grid point(s) skipped";
  return ParetoFront::build(std::move(entries), std::move(meta));
}

inline ParetoFront sweep(const NetworkInstance& inst, const EpsConfig& config = {}) {
  return sweep(inst, config, payoff_table(inst, config));
}

}  // namespace clscnd

#endif  // CLSCND_EPS_CONSTRAINT_HPP
