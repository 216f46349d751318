#include <clscnd/bundled.hpp>
#include <clscnd/generator.hpp>
#include <clscnd/oracle.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace clscnd;
using clscnd::testing::tradeoff_unit_instance;
using clscnd::testing::unit_instance;

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

}  // namespace

TEST(BruteForceMilp, BundledEnumeratesAllConfigurations) {
  const auto inst = bundled_case();
  const auto r = brute_force_milp(inst, ObjectiveMode::cost);
  EXPECT_EQ(r.log.size(), 64u);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  const auto m = solve_milp(build_milp(inst, ObjectiveMode::cost).lp);
  EXPECT_TRUE(close(r.objective, m.objective)) << r.objective << " vs " << m.objective;
}

TEST(BruteForceMilp, MatchesSolverInEveryMode) {
  for (const auto& inst : {bundled_case(), bundled_tradeoff_case()}) {
    const auto table = payoff_table(inst);
    std::vector<std::pair<ObjectiveMode, std::optional<double>>> modes{{ObjectiveMode::cost, std::nullopt},
                                                                       {ObjectiveMode::emissions, std::nullopt}};
    for (double s : {0.0, 0.3, 0.7, 1.0})
      modes.push_back({ObjectiveMode::cost_with_emission_cap, table.ideal.f2 + s * (table.nadir.f2 - table.ideal.f2)});
    for (const auto& [mode, cap] : modes) {
      const auto o = brute_force_milp(inst, mode, cap, {}, 4);
      const auto m = solve_milp(build_milp(inst, mode, cap).lp);
      ASSERT_EQ(o.status, m.status);
      EXPECT_TRUE(close(o.objective, m.objective)) << o.objective << " vs " << m.objective;
    }
  }
}

TEST(BruteForceMilp, FreeOpeningIncludesOpenAll) {
  auto inst = bundled_case();
  for (auto* v : {&inst.factory_fixed_cost, &inst.warehouse_fixed_cost, &inst.disassembly_fixed_cost})
    std::fill(v->begin(), v->end(), 0.0);
  const auto r = brute_force_milp(inst, ObjectiveMode::cost);
  const auto& all_open = r.log.back();  // every bit set
  EXPECT_TRUE(std::all_of(all_open.indicators.begin(), all_open.indicators.end(), [](char b) { return b == 1; }));
  ASSERT_EQ(all_open.status, SolveStatus::optimal);
  EXPECT_TRUE(close(all_open.objective, r.objective));
}

TEST(BruteForceMilp, EmptyProblemPicksAllClosed) {
  auto inst = unit_instance();
  inst.demand = {0.0};
  inst.min_collection_share = 0.0;
  const auto r = brute_force_milp(inst, ObjectiveMode::cost);
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_EQ(r.indicators, (std::vector<char>{0, 0, 0}));
}

TEST(BruteForceMilp, InfeasibleInstance) {
  auto inst = unit_instance();
  inst.production_capacity = {5.0};
  const auto r = brute_force_milp(inst, ObjectiveMode::cost);
  EXPECT_EQ(r.status, SolveStatus::infeasible);
  EXPECT_EQ(r.log.size(), 8u);
}

TEST(BruteForceMilp, OversizeRefused) {
  Dimensions d{6, 6, 1, 5, 1, 1, 1, 1};
  const auto inst = NetworkInstance::zeros(d);
  EXPECT_THROW(brute_force_milp(inst, ObjectiveMode::cost), InvalidParameter);
  EXPECT_THROW(brute_force_front(inst, 3), InvalidParameter);
}

TEST(BruteForceMilp, ThreadCountDoesNotMatter) {
  const auto inst = bundled_tradeoff_case();
  const auto a = brute_force_milp(inst, ObjectiveMode::emissions, std::nullopt, {}, 1);
  const auto b = brute_force_milp(inst, ObjectiveMode::emissions, std::nullopt, {}, 3);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.indicators, b.indicators);
  EXPECT_EQ(a.x, b.x);
}

TEST(BruteForceFront, TwoPointsAreAnchors) {
  const auto f = brute_force_front(tradeoff_unit_instance(), 2);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(f[0].f1, 348.0, 1e-6);
  EXPECT_NEAR(f[1].f2, 46.0, 1e-6);
  EXPECT_EQ(f[0].method, "oracle");
  EXPECT_EQ(f.metadata.config.at("method"), "oracle");
}

TEST(BruteForceFront, TradeoffCaseMatchesSweep) {
  const auto inst = bundled_tradeoff_case();
  const auto oracle = brute_force_front(inst, 6);
  EpsConfig cfg;
  cfg.grid_points = 6;
  const auto exact = sweep(inst, cfg);
  ASSERT_GE(oracle.size(), 2u);
  ASSERT_EQ(oracle.size(), exact.size());
  for (std::size_t k = 0; k < exact.size(); ++k) {
    EXPECT_TRUE(close(oracle[k].f1, exact[k].f1));
    EXPECT_TRUE(close(oracle[k].f2, exact[k].f2));
  }
}

TEST(BruteForceMilp, GeneratedInstancesAgreeWithSolver) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.dims = {2, 2, 2, 2, 1 + seed % 2, 1, 1, 1 + seed % 2};
    const auto inst = generate(spec);
    for (auto mode : {ObjectiveMode::cost, ObjectiveMode::emissions}) {
      const auto o = brute_force_milp(inst, mode, std::nullopt, {}, 4);
      const auto m = solve_milp(build_milp(inst, mode).lp);
      EXPECT_TRUE(close(o.objective, m.objective)) << "seed " << seed;
    }
  }
}
