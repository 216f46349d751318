#ifndef CLSCND_TESTS_FIXTURES_HPP
#define CLSCND_TESTS_FIXTURES_HPP

#include <clscnd/model.hpp>

#include <string>

namespace clscnd::testing {

// 1-1-1-1 network: unit costs, rates, distances and emission factors;
// fixed costs and capacities 100; Q = 10, Hd = 0.2, Hr = 0.5, lambda = 0.
inline NetworkInstance unit_instance() {
  Dimensions d;
  auto inst = NetworkInstance::zeros(d);
  inst.demand = {10.0};
  for (TransportLink* link : {&inst.factory_warehouse, &inst.warehouse_customer, &inst.customer_disassembly,
                              &inst.disassembly_factory}) {
    for (auto& v : link->unit_cost.flat()) v = 1.0;
    for (auto& v : link->rate.flat()) v = 1.0;
    for (auto& v : link->distance.flat()) v = 1.0;
    for (auto& v : link->emission_factor) v = 1.0;
  }
  inst.factory_fixed_cost = inst.warehouse_fixed_cost = inst.disassembly_fixed_cost = {100.0};
  inst.production_cost = inst.handling_cost = inst.collection_cost = {1.0};
  inst.disassembly_cost = inst.remanufacturing_cost = {1.0};
  inst.production_capacity = inst.warehouse_capacity = {100.0};
  inst.disassembly_capacity = inst.remanufacturing_capacity = {100.0};
  inst.min_collection_share = 0.2;
  inst.min_demolition_share = 0.5;
  inst.production_emission = inst.assembly_emission = inst.handling_emission = {1.0};
  inst.disassembly_emission = inst.remanufacturing_emission = {1.0};
  inst.failure_rate = 0.0;
  inst.horizon_days = 7.0;
  inst.provenance = "unit test instance";
  return inst;
}

// Every facility open, Ya = 10, Yb = 10, Yc = 2, Yd = 1.
inline FlowSolution unit_solution(const NetworkInstance& inst) {
  auto s = FlowSolution::zeros(inst.dims);
  s.factory_open = s.warehouse_open = s.disassembly_open = {1.0};
  s.factory_warehouse(0, 0, 0) = 10.0;
  s.warehouse_customer(0, 0, 0) = 10.0;
  s.customer_disassembly(0, 0, 0) = 2.0;
  s.disassembly_factory(0, 0, 0) = 1.0;
  return s;
}

// Unit instance with two factory->warehouse options:
// option 1 (Ta = 1, Gta = 10), option 2 (Ta = 10, Gta = 1).
inline NetworkInstance tradeoff_unit_instance() {
  auto base = unit_instance();
  Dimensions d;
  d.factory_options = 2;
  auto inst = base;
  inst.dims = d;
  inst.factory_warehouse.unit_cost = Tensor3(2, 1, 1);
  inst.factory_warehouse.unit_cost(0, 0, 0) = 1.0;
  inst.factory_warehouse.unit_cost(1, 0, 0) = 10.0;
  inst.factory_warehouse.rate = Tensor3(2, 1, 1, 1.0);
  inst.factory_warehouse.emission_factor = {10.0, 1.0};
  inst.provenance = "unit trade-off instance";
  return inst;
}

}  // namespace clscnd::testing

#endif
