#ifndef CLSCND_BUNDLED_HPP
#define CLSCND_BUNDLED_HPP

#include <clscnd/model.hpp>

namespace clscnd {

namespace detail {

struct Mode {
  double cost_per_km;    // currency per unit per corrected km
  double emission;       // kg CO2 per unit per km
  double rate;           // distance correction
};

inline constexpr Mode road{0.45, 0.30, 1.30};
inline constexpr Mode rail{0.70, 0.08, 1.15};

/// Fills one link stage: option k uses modes[k]; unit cost = cost_per_km * rate * distance.
inline void fill_link(TransportLink& link, const Matrix& distance, std::initializer_list<Mode> modes) {
  const std::size_t opts = modes.size();
  link.distance = distance;
  link.unit_cost = Tensor3(opts, distance.rows(), distance.cols());
  link.rate = Tensor3(opts, distance.rows(), distance.cols());
  link.emission_factor.clear();
  std::size_t k = 0;
  for (const auto& m : modes) {
    for (std::size_t o = 0; o < distance.rows(); ++o)
      for (std::size_t d = 0; d < distance.cols(); ++d) {
        link.rate(k, o, d) = m.rate;
        link.unit_cost(k, o, d) = m.cost_per_km * m.rate * distance(o, d);
      }
    link.emission_factor.push_back(m.emission);
    ++k;
  }
}

inline Matrix matrix2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline NetworkInstance bundled_base(std::initializer_list<Mode> modes) {
  Dimensions d{2, 2, 2, 2, modes.size(), modes.size(), modes.size(), modes.size()};
  auto inst = NetworkInstance::zeros(d);
  inst.demand = {1630.0, 950.0};

  fill_link(inst.factory_warehouse, matrix2(120.0, 340.0, 310.0, 90.0), modes);
  fill_link(inst.warehouse_customer, matrix2(60.0, 210.0, 190.0, 45.0), modes);
  fill_link(inst.customer_disassembly, matrix2(30.0, 150.0, 140.0, 40.0), modes);
  fill_link(inst.disassembly_factory, matrix2(100.0, 260.0, 280.0, 80.0), modes);

  inst.factory_fixed_cost = {120000.0, 95000.0};
  inst.warehouse_fixed_cost = {40000.0, 35000.0};
  inst.disassembly_fixed_cost = {15000.0, 12000.0};

  inst.production_cost = {350.0, 390.0};
  inst.handling_cost = {20.0, 25.0};
  inst.collection_cost = {8.0, 9.0};
  inst.disassembly_cost = {12.0, 10.0};
  inst.remanufacturing_cost = {60.0, 70.0};

  inst.production_capacity = {2200.0, 1800.0};
  inst.warehouse_capacity = {2700.0, 1500.0};
  inst.disassembly_capacity = {600.0, 450.0};
  inst.remanufacturing_capacity = {150.0, 120.0};

  inst.min_collection_share = 0.2;
  inst.min_demolition_share = 0.1;

  inst.production_emission = {700.0, 520.0};
  inst.assembly_emission = {40.0, 35.0};
  inst.handling_emission = {2.5, 3.0};
  inst.disassembly_emission = {15.0, 12.0};
  inst.remanufacturing_emission = {180.0, 150.0};

  inst.failure_rate = 0.01;
  inst.horizon_days = 7.0;
  return inst;
}

}  // namespace detail

/// Synthetic 2-2-2-2 case, one road option per stage. The values are invented,
/// not taken from any published data set.
inline NetworkInstance bundled_case() {
  auto inst = detail::bundled_base({detail::road});
  inst.provenance = "synthetic: 2 factories, 2 warehouses, 2 customers, 2 disassembly centers; road transport; "
                    "one-week horizon. Not the published data.";
  return inst;
}

/// The bundled case with a second (rail) option on every stage: costlier per
/// unit, lower emission factor.
inline NetworkInstance bundled_tradeoff_case() {
  auto inst = detail::bundled_base({detail::road, detail::rail});
  inst.provenance = "synthetic: bundled case with road (option 1) and rail (option 2) on every stage. "
                    "Not the published data.";
  return inst;
}

}  // namespace clscnd

#endif  // CLSCND_BUNDLED_HPP
