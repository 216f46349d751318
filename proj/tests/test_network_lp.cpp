#include <clscnd/lp.hpp>
#include <clscnd/network_lp.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace clscnd;
using clscnd::testing::tradeoff_unit_instance;
using clscnd::testing::unit_instance;
using clscnd::testing::unit_solution;

TEST(VariableLayout, UnitShape) {
  const auto inst = unit_instance();
  const auto prog = build_milp(inst, ObjectiveMode::cost);
  EXPECT_EQ(prog.lp.objective.size(), 7u);
  EXPECT_EQ(prog.lp.rows.size(), 9u);
  EXPECT_EQ(prog.layout.indicator_count(), 3u);
  EXPECT_EQ(prog.lp.names[0], "Xa_1");
  EXPECT_EQ(prog.lp.names[3], "Ya_1,1^1");
  EXPECT_EQ(prog.lp.rows[0].name, "C12[1]");
  EXPECT_EQ(prog.lp.rows[8].name, "C20[1]");
  for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(prog.lp.integer[j]);
  for (std::size_t j = 3; j < 7; ++j) EXPECT_FALSE(prog.lp.integer[j]);
}

TEST(VariableLayout, EncodeDecodeRoundTrip) {
  auto inst = tradeoff_unit_instance();
  const VariableLayout v(inst.dims);
  auto sol = unit_solution(unit_instance());
  sol.factory_warehouse = Tensor3(2, 1, 1);
  sol.factory_warehouse(1, 0, 0) = 4.5;
  const auto x = v.encode(sol);
  EXPECT_EQ(x.size(), v.size());
  EXPECT_EQ(x[v.ya(1, 0, 0)], 4.5);
  EXPECT_TRUE(v.decode(x) == sol);
  EXPECT_THROW(v.decode(std::vector<double>(3)), DimensionError);
}

TEST(BuildMilp, EmissionObjectiveIgnoresFixedCosts) {
  const auto inst = unit_instance();
  const auto prog = build_milp(inst, ObjectiveMode::emissions);
  EXPECT_EQ(prog.lp.objective[prog.layout.xa(0)], 0.0);
  EXPECT_EQ(prog.lp.objective[prog.layout.xb(0)], 0.0);
  EXPECT_EQ(prog.lp.objective[prog.layout.xd(0)], 0.0);
}

TEST(BuildMilp, CoefficientsReproduceEvaluators) {
  auto inst = unit_instance();
  inst.failure_rate = 0.05;
  const VariableLayout v(inst.dims);
  const auto sol = unit_solution(inst);
  const auto x = v.encode(sol);
  auto dot = [&](const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * x[j];
    return s;
  };
  EXPECT_NEAR(dot(cost_coefficients(inst, v)), evaluate_cost(inst, sol).total, 1e-12);
  EXPECT_NEAR(dot(emission_coefficients(inst, v)), evaluate_emissions(inst, sol).total, 1e-12);
  inst.include_assembly_emissions = true;
  EXPECT_NEAR(dot(emission_coefficients(inst, v)), evaluate_emissions(inst, sol).total, 1e-12);
}

TEST(BuildMilp, SolvedPointMatchesEvaluator) {
  const auto inst = unit_instance();
  const auto prog = build_milp(inst, ObjectiveMode::cost);
  const auto r = solve_milp(prog.lp);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  const auto sol = prog.decode(r.x);
  EXPECT_NEAR(r.objective, evaluate_cost(inst, sol).total, 1e-9);
  EXPECT_NEAR(r.objective, 348.0, 1e-9);
  EXPECT_TRUE(check_feasibility(inst, sol).feasible());
}

TEST(BuildMilp, TradeoffAnchors) {
  const auto inst = tradeoff_unit_instance();
  const auto by_cost = solve_milp(build_milp(inst, ObjectiveMode::cost).lp);
  const auto by_emis = solve_milp(build_milp(inst, ObjectiveMode::emissions).lp);
  ASSERT_EQ(by_cost.status, SolveStatus::optimal);
  ASSERT_EQ(by_emis.status, SolveStatus::optimal);
  EXPECT_NEAR(by_cost.objective, 348.0, 1e-9);
  EXPECT_NEAR(by_emis.objective, 46.0, 1e-9);
  // a cap between the anchors forces a mix of both options
  const auto capped = build_milp(inst, ObjectiveMode::cost_with_emission_cap, 91.0);
  const auto r = solve_milp(capped.lp);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  const auto sol = capped.decode(r.x);
  EXPECT_NEAR(evaluate_emissions(inst, sol).total, 91.0, 1e-7);
  EXPECT_NEAR(r.objective, 393.0, 1e-7);
}

TEST(BuildMilp, CapArgumentsChecked) {
  const auto inst = unit_instance();
  EXPECT_THROW(build_milp(inst, ObjectiveMode::cost_with_emission_cap), InvalidParameter);
  EXPECT_THROW(build_milp(inst, ObjectiveMode::cost, 10.0), InvalidParameter);
  const auto infeasible = build_milp(inst, ObjectiveMode::cost_with_emission_cap, 10.0);
  EXPECT_EQ(solve_milp(infeasible.lp).status, SolveStatus::infeasible);
}

TEST(BuildMilp, RelaxedIndicatorsAreContinuous) {
  const auto inst = unit_instance();
  const auto prog = build_milp(inst, ObjectiveMode::cost, std::nullopt, IndicatorMode::relaxed);
  EXPECT_FALSE(prog.lp.has_integers());
  const auto r = solve_lp(prog.lp);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  // Xa = 10/100 etc.: the relaxation pays a fraction of each fixed cost
  EXPECT_LT(r.objective, 348.0);
}

TEST(BuildMilp, DumpIsDeterministic) {
  const auto inst = tradeoff_unit_instance();
  EXPECT_EQ(dump_lp(build_milp(inst, ObjectiveMode::cost).lp), dump_lp(build_milp(inst, ObjectiveMode::cost).lp));
}
