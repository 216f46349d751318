#ifndef CLSCND_ORACLE_HPP
#define CLSCND_ORACLE_HPP

#include <clscnd/detail/parallel.hpp>
#include <clscnd/eps_constraint.hpp>
#include <clscnd/lp.hpp>
#include <clscnd/network_lp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace clscnd {

inline constexpr std::size_t oracle_max_binaries = 16;

struct ConfigurationLog {
  std::vector<char> indicators;
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
};

struct OracleResult {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  std::vector<char> indicators;  // optimal assignment (lexicographically smallest among ties)
  std::vector<double> x;
  std::vector<ConfigurationLog> log;  // one entry per assignment, in enumeration order
};

namespace detail {

/// Assignment k sets integer column j (in column order) to bit j of k.
inline std::vector<char> assignment(std::size_t k, std::size_t bits) {
  std::vector<char> a(bits);
  for (std::size_t j = 0; j < bits; ++j) a[j] = static_cast<char>((k >> j) & 1U);
  return a;
}

}  // namespace detail

/// Enumerates every 0/1 assignment of the integer columns of `lp`, fixes them
/// and solves the remaining LP with solve_lp. Integer columns must have
/// bounds within [0, 1].
inline OracleResult brute_force_binary(const LinearProgram& lp, const SolverConfig& config = {},
                                       std::size_t threads = 1) {
  lp.validate();
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < lp.integer.size(); ++j)
    if (lp.integer[j]) {
      if (lp.lower[j] < 0.0 || lp.upper[j] > 1.0)
        throw InvalidParameter("brute force: integer column " + lp.names[j] + " is not binary");
      cols.push_back(j);
    }
  if (cols.size() > oracle_max_binaries)
    throw InvalidParameter("brute force: " + std::to_string(cols.size()) + " binaries exceed the enumeration bound of " +
                           std::to_string(oracle_max_binaries));

  const std::size_t count = std::size_t{1} << cols.size();
  std::vector<LpSolution> solved(count);
  OracleResult result;
  result.log.resize(count);
  detail::parallel_for(count, threads, [&](std::size_t k) {
    LinearProgram fixed = lp;
    const auto a = detail::assignment(k, cols.size());
    bool possible = true;
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double v = a[b];
      if (v < lp.lower[cols[b]] || v > lp.upper[cols[b]]) possible = false;
      fixed.lower[cols[b]] = fixed.upper[cols[b]] = v;
      fixed.integer[cols[b]] = 0;
    }
    if (possible) solved[k] = solve_lp(fixed, config);
    else solved[k].status = SolveStatus::infeasible;
    result.log[k] = {a, solved[k].status, solved[k].objective};
  });

  // Ties within the comparison gap go to the lexicographically smallest assignment.
  std::optional<std::size_t> best;
  bool unbounded = false;
  for (std::size_t k = 0; k < count; ++k) {
    if (solved[k].status == SolveStatus::unbounded) unbounded = true;
    if (solved[k].status != SolveStatus::optimal) continue;
    if (!best) {
      best = k;
      continue;
    }
    const double a = solved[k].objective, b = solved[*best].objective;
    const double gap = 1e-9 * std::max(1.0, std::abs(b));
    if (a < b - gap || (a <= b + gap && result.log[k].indicators < result.log[*best].indicators)) best = k;
  }
  if (unbounded) {
    result.status = SolveStatus::unbounded;
  } else if (best) {
    result.status = SolveStatus::optimal;
    result.objective = solved[*best].objective;
    result.x = solved[*best].x;
    result.indicators = result.log[*best].indicators;
  }
  return result;
}

/// Exhaustive counterpart of solve_milp(build_milp(inst, mode, cap)).
inline OracleResult brute_force_milp(const NetworkInstance& inst, ObjectiveMode mode,
                                     std::optional<double> emission_cap = std::nullopt,
                                     const SolverConfig& config = {}, std::size_t threads = 1) {
  if (inst.dims.facility_count() > oracle_max_binaries)
    throw InvalidParameter("brute force: F + W + I = " + std::to_string(inst.dims.facility_count()) +
                           " exceeds the enumeration bound of " + std::to_string(oracle_max_binaries));
  return brute_force_binary(build_milp(inst, mode, emission_cap).lp, config, threads);
}

/// MilpEngine adapter so the sweep can run on exhaustive enumeration.
inline LpSolution brute_force_engine(const LinearProgram& lp, const SolverConfig& config) {
  const auto r = brute_force_binary(lp, config);
  LpSolution s;
  s.status = r.status;
  s.objective = r.objective;
  s.x = r.x;
  s.nodes = r.log.size();
  return s;
}

/// Reference front: the epsilon sweep with every MILP replaced by enumeration.
inline ParetoFront brute_force_front(const NetworkInstance& inst, std::size_t grid_points, EpsConfig config = {}) {
  if (inst.dims.facility_count() > oracle_max_binaries)
    throw InvalidParameter("brute force: F + W + I = " + std::to_string(inst.dims.facility_count()) +
                           " exceeds the enumeration bound of " + std::to_string(oracle_max_binaries));
  config.grid_points = grid_points;
  config.engine = brute_force_engine;
  auto front = sweep(inst, config, payoff_table(inst, config), "oracle");
  front.metadata.config["method"] = "oracle";
  return front;
}

}  // namespace clscnd

#endif  // CLSCND_ORACLE_HPP
