#ifndef CLSCND_MODEL_HPP
#define CLSCND_MODEL_HPP

// Closed-loop network data model: factories -> warehouses -> customers
// (forward flow) and customers -> disassembly centers -> factories (reverse
// flow). Objective evaluators and the constraint checker live here too.

#include <clscnd/errors.hpp>
#include <clscnd/tensor.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clscnd {

struct Dimensions {
  std::size_t factories = 1;
  std::size_t warehouses = 1;
  std::size_t customers = 1;
  std::size_t disassembly_centers = 1;
  // transport options per link stage
  std::size_t factory_options = 1;      // TF
  std::size_t warehouse_options = 1;    // TW
  std::size_t customer_options = 1;     // TK
  std::size_t disassembly_options = 1;  // TI

  std::size_t facility_count() const noexcept { return factories + warehouses + disassembly_centers; }
  bool operator==(const Dimensions&) const = default;
};

/// One link stage (e.g. factory -> warehouse). Tensors are [option][origin][destination].
struct TransportLink {
  Tensor3 unit_cost;                     // currency per unit
  Tensor3 rate;                          // distance-correction multiplier, > 0
  Matrix distance;                       // km, [origin][destination]
  std::vector<double> emission_factor;   // kg CO2 per unit per km, per option

  bool operator==(const TransportLink&) const = default;
};

struct NetworkInstance {
  Dimensions dims;

  std::vector<double> demand;  // Q_c

  TransportLink factory_warehouse;      // Ta, L^tf, Da, Gta
  TransportLink warehouse_customer;     // Tb, L^tw, Db, Gtb
  TransportLink customer_disassembly;   // Tc, L^tk, Dc, Gtc
  TransportLink disassembly_factory;    // Td, L^ti, Dd, Gtd

  std::vector<double> factory_fixed_cost;      // Ra
  std::vector<double> warehouse_fixed_cost;    // Rb
  std::vector<double> disassembly_fixed_cost;  // Rd

  std::vector<double> production_cost;       // Ma, per factory
  std::vector<double> handling_cost;         // Mb, per warehouse
  std::vector<double> collection_cost;       // Mc, per customer
  std::vector<double> disassembly_cost;      // Md, per center
  std::vector<double> remanufacturing_cost;  // Mr, per factory

  std::vector<double> production_capacity;       // Pa
  std::vector<double> warehouse_capacity;        // Pb
  std::vector<double> disassembly_capacity;      // Pd
  std::vector<double> remanufacturing_capacity;  // Pr

  double min_collection_share = 0.0;  // Hd
  double min_demolition_share = 0.0;  // Hr

  std::vector<double> production_emission;       // Ga
  std::vector<double> assembly_emission;         // Gc
  std::vector<double> handling_emission;         // Gb
  std::vector<double> disassembly_emission;      // Gd
  std::vector<double> remanufacturing_emission;  // Gr

  double failure_rate = 0.0;  // lambda, per day
  double horizon_days = 7.0;  // t

  bool include_assembly_emissions = false;
  std::string currency = "\xC2\xA3";  // "£"
  std::string provenance;

  /// Correctly shaped instance with every parameter zero, rates 1, t = 7.
  static NetworkInstance zeros(const Dimensions& dims);

  /// Throws ValidationError (key = document symbol, e.g. "pa") or DimensionError.
  void validate() const;

  double reliability() const;

  bool operator==(const NetworkInstance&) const = default;
};

/// Decision variables. Flow tensors use the same [option][origin][destination]
/// layout as the matching TransportLink.
struct FlowSolution {
  std::vector<double> factory_open;      // Xa
  std::vector<double> warehouse_open;    // Xb
  std::vector<double> disassembly_open;  // Xd
  Tensor3 factory_warehouse;             // Ya
  Tensor3 warehouse_customer;            // Yb
  Tensor3 customer_disassembly;          // Yc
  Tensor3 disassembly_factory;           // Yd

  static FlowSolution zeros(const Dimensions& dims);
  bool operator==(const FlowSolution&) const = default;
};

struct CostBreakdown {
  double fixed = 0.0;      // TFC
  double variable = 0.0;   // TVC
  double transport = 0.0;  // TTC
  double total = 0.0;
};

struct EmissionBreakdown {
  double production = 0.0;       // EP
  double assembly = 0.0;         // EA, counted in total only when the instance flag is set
  double handling = 0.0;         // EH
  double disassembly = 0.0;      // ED
  double remanufacturing = 0.0;  // ER
  double transport = 0.0;        // ET
  double total = 0.0;
};

enum class IndicatorMode { binary, relaxed };

enum class ConstraintFamily {
  factory_capacity,          // C12
  warehouse_capacity,        // C13
  warehouse_balance,         // C14
  demand,                    // C15
  collection_limit,          // C16
  disassembly_capacity,      // C17
  minimum_collection,        // C18
  minimum_demolition,        // C19
  remanufacturing_capacity,  // C20
  nonnegativity,             // C21
  indicator_domain,          // C22
};

inline constexpr double default_constraint_tolerance = 1e-6;

/// "C12" ... "C22".
inline std::string family_id(ConstraintFamily family) {
  return "C" + std::to_string(12 + static_cast<int>(family));
}

struct Violation {
  ConstraintFamily family;
  std::size_t entity;  // facility/customer index for C12-C20, flat variable index for C21/C22
  double slack;        // negative: amount by which the constraint is broken
  double tolerance;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const noexcept { return violations.empty(); }
  /// Sum of -slack over all violations.
  double total_violation() const noexcept {
    double s = 0.0;
    for (const auto& v : violations) s -= v.slack;
    return s;
  }
};

/// e^(-lambda * t).
inline double reliability_factor(double failure_rate, double horizon_days) {
  if (!(failure_rate >= 0.0) || !std::isfinite(failure_rate))
    throw InvalidParameter("failure rate must be finite and >= 0");
  if (!(horizon_days >= 0.0) || !std::isfinite(horizon_days))
    throw InvalidParameter("horizon must be finite and >= 0");
  return std::exp(-failure_rate * horizon_days);
}

// ---------------------------------------------------------------------------

namespace detail {

inline TransportLink make_link(std::size_t options, std::size_t origins, std::size_t destinations) {
  return TransportLink{Tensor3(options, origins, destinations, 0.0),
                       Tensor3(options, origins, destinations, 1.0),
                       Matrix(origins, destinations, 0.0),
                       std::vector<double>(options, 0.0)};
}

inline void require_size(std::string_view key, std::size_t actual, std::size_t expected) {
  if (actual != expected)
    throw DimensionError(std::string(key) + ": expected " + std::to_string(expected) +
                         " entries, got " + std::to_string(actual));
}

inline void require_nonnegative(std::string_view key, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0)
      throw ValidationError(std::string(key),
                            "entry " + std::to_string(k) + " must be finite and >= 0");
  }
}

inline void require_positive(std::string_view key, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] <= 0.0)
      throw ValidationError(std::string(key),
                            "entry " + std::to_string(k) + " must be finite and > 0");
  }
}

inline void check_link(const TransportLink& link, std::string_view stage, std::size_t options,
                       std::size_t origins, std::size_t destinations) {
  const std::string s(stage);
  const std::array<std::size_t, 3> shape{options, origins, destinations};
  if (link.unit_cost.shape() != shape) throw DimensionError("t" + s + ": shape mismatch");
  if (link.rate.shape() != shape) throw DimensionError("l_" + s + ": shape mismatch");
  if (link.distance.rows() != origins || link.distance.cols() != destinations)
    throw DimensionError("d" + s + ": shape mismatch");
  require_size("gt" + s, link.emission_factor.size(), options);
  require_nonnegative("t" + s, link.unit_cost.flat());
  require_positive("l_" + s, link.rate.flat());
  require_nonnegative("d" + s, link.distance.flat());
  require_nonnegative("gt" + s, link.emission_factor);
}

inline void check_flow_shape(const Tensor3& flow, const Tensor3& like, std::string_view name) {
  if (flow.shape() != like.shape()) throw DimensionError(std::string(name) + ": flow shape mismatch");
}

}  // namespace detail

inline NetworkInstance NetworkInstance::zeros(const Dimensions& d) {
  NetworkInstance inst;
  inst.dims = d;
  inst.demand.assign(d.customers, 0.0);
  inst.factory_warehouse = detail::make_link(d.factory_options, d.factories, d.warehouses);
  inst.warehouse_customer = detail::make_link(d.warehouse_options, d.warehouses, d.customers);
  inst.customer_disassembly = detail::make_link(d.customer_options, d.customers, d.disassembly_centers);
  inst.disassembly_factory = detail::make_link(d.disassembly_options, d.disassembly_centers, d.factories);
  inst.factory_fixed_cost.assign(d.factories, 0.0);
  inst.warehouse_fixed_cost.assign(d.warehouses, 0.0);
  inst.disassembly_fixed_cost.assign(d.disassembly_centers, 0.0);
  inst.production_cost.assign(d.factories, 0.0);
  inst.handling_cost.assign(d.warehouses, 0.0);
  inst.collection_cost.assign(d.customers, 0.0);
  inst.disassembly_cost.assign(d.disassembly_centers, 0.0);
  inst.remanufacturing_cost.assign(d.factories, 0.0);
  inst.production_capacity.assign(d.factories, 0.0);
  inst.warehouse_capacity.assign(d.warehouses, 0.0);
  inst.disassembly_capacity.assign(d.disassembly_centers, 0.0);
  inst.remanufacturing_capacity.assign(d.factories, 0.0);
  inst.production_emission.assign(d.factories, 0.0);
  inst.assembly_emission.assign(d.factories, 0.0);
  inst.handling_emission.assign(d.warehouses, 0.0);
  inst.disassembly_emission.assign(d.disassembly_centers, 0.0);
  inst.remanufacturing_emission.assign(d.factories, 0.0);
  return inst;
}

inline void NetworkInstance::validate() const {
  const auto& d = dims;
  if (d.factories == 0 || d.warehouses == 0 || d.customers == 0 || d.disassembly_centers == 0 ||
      d.factory_options == 0 || d.warehouse_options == 0 || d.customer_options == 0 ||
      d.disassembly_options == 0)
    throw ValidationError("dimensions", "every count must be >= 1");

  using detail::require_nonnegative;
  using detail::require_size;
  require_size("q", demand.size(), d.customers);
  require_nonnegative("q", demand);

  detail::check_link(factory_warehouse, "a", d.factory_options, d.factories, d.warehouses);
  detail::check_link(warehouse_customer, "b", d.warehouse_options, d.warehouses, d.customers);
  detail::check_link(customer_disassembly, "c", d.customer_options, d.customers, d.disassembly_centers);
  detail::check_link(disassembly_factory, "d", d.disassembly_options, d.disassembly_centers, d.factories);

  const struct {
    std::string_view key;
    const std::vector<double>& values;
    std::size_t expected;
  } vectors[] = {
      {"ra", factory_fixed_cost, d.factories},
      {"rb", warehouse_fixed_cost, d.warehouses},
      {"rd", disassembly_fixed_cost, d.disassembly_centers},
      {"ma", production_cost, d.factories},
      {"mb", handling_cost, d.warehouses},
      {"mc", collection_cost, d.customers},
      {"md", disassembly_cost, d.disassembly_centers},
      {"mr", remanufacturing_cost, d.factories},
      {"pa", production_capacity, d.factories},
      {"pb", warehouse_capacity, d.warehouses},
      {"pd", disassembly_capacity, d.disassembly_centers},
      {"pr", remanufacturing_capacity, d.factories},
      {"ga", production_emission, d.factories},
      {"gc", assembly_emission, d.factories},
      {"gb", handling_emission, d.warehouses},
      {"gd", disassembly_emission, d.disassembly_centers},
      {"gr", remanufacturing_emission, d.factories},
  };
  for (const auto& v : vectors) {
    require_size(v.key, v.values.size(), v.expected);
    require_nonnegative(v.key, v.values);
  }

  if (!std::isfinite(min_collection_share) || min_collection_share < 0.0 || min_collection_share > 1.0)
    throw ValidationError("hd", "must lie in [0, 1]");
  if (!std::isfinite(min_demolition_share) || min_demolition_share < 0.0 || min_demolition_share > 1.0)
    throw ValidationError("hr", "must lie in [0, 1]");
  if (!std::isfinite(failure_rate) || failure_rate < 0.0)
    throw ValidationError("lambda", "must be finite and >= 0");
  if (!std::isfinite(horizon_days) || horizon_days < 0.0)
    throw ValidationError("t", "must be finite and >= 0");
}

inline double NetworkInstance::reliability() const { return reliability_factor(failure_rate, horizon_days); }

inline FlowSolution FlowSolution::zeros(const Dimensions& d) {
  FlowSolution s;
  s.factory_open.assign(d.factories, 0.0);
  s.warehouse_open.assign(d.warehouses, 0.0);
  s.disassembly_open.assign(d.disassembly_centers, 0.0);
  s.factory_warehouse = Tensor3(d.factory_options, d.factories, d.warehouses);
  s.warehouse_customer = Tensor3(d.warehouse_options, d.warehouses, d.customers);
  s.customer_disassembly = Tensor3(d.customer_options, d.customers, d.disassembly_centers);
  s.disassembly_factory = Tensor3(d.disassembly_options, d.disassembly_centers, d.factories);
  return s;
}

/// Throws DimensionError unless `solution` is shaped for `instance`.
inline void check_shapes(const NetworkInstance& instance, const FlowSolution& solution) {
  const auto& d = instance.dims;
  detail::require_size("xa", solution.factory_open.size(), d.factories);
  detail::require_size("xb", solution.warehouse_open.size(), d.warehouses);
  detail::require_size("xd", solution.disassembly_open.size(), d.disassembly_centers);
  detail::check_flow_shape(solution.factory_warehouse, instance.factory_warehouse.unit_cost, "ya");
  detail::check_flow_shape(solution.warehouse_customer, instance.warehouse_customer.unit_cost, "yb");
  detail::check_flow_shape(solution.customer_disassembly, instance.customer_disassembly.unit_cost, "yc");
  detail::check_flow_shape(solution.disassembly_factory, instance.disassembly_factory.unit_cost, "yd");
}

// ---------------------------------------------------------------------------
// Objectives

inline CostBreakdown evaluate_cost(const NetworkInstance& inst, const FlowSolution& sol) {
  check_shapes(inst, sol);
  const auto& d = inst.dims;
  const double rho = inst.reliability();
  CostBreakdown out;

  for (std::size_t f = 0; f < d.factories; ++f) out.fixed += inst.factory_fixed_cost[f] * sol.factory_open[f];
  for (std::size_t w = 0; w < d.warehouses; ++w) out.fixed += inst.warehouse_fixed_cost[w] * sol.warehouse_open[w];
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    out.fixed += inst.disassembly_fixed_cost[i] * sol.disassembly_open[i];

  double handling = 0.0;
  for (std::size_t f = 0; f < d.factories; ++f)
    out.variable += inst.production_cost[f] * sol.factory_warehouse.origin_total(f);
  for (std::size_t w = 0; w < d.warehouses; ++w)
    handling += inst.handling_cost[w] * sol.warehouse_customer.origin_total(w);
  out.variable += rho * handling;
  for (std::size_t c = 0; c < d.customers; ++c)
    out.variable += inst.collection_cost[c] * sol.customer_disassembly.origin_total(c);
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    out.variable += inst.disassembly_cost[i] * sol.customer_disassembly.destination_total(i);
  for (std::size_t f = 0; f < d.factories; ++f)
    out.variable += inst.remanufacturing_cost[f] * sol.disassembly_factory.destination_total(f);

  auto weighted = [](const Tensor3& cost, const Tensor3& flow) {
    double s = 0.0;
    for (std::size_t k = 0; k < flow.size(); ++k) s += cost.flat()[k] * flow.flat()[k];
    return s;
  };
  out.transport = weighted(inst.factory_warehouse.unit_cost, sol.factory_warehouse) +
                  rho * weighted(inst.warehouse_customer.unit_cost, sol.warehouse_customer) +
                  weighted(inst.customer_disassembly.unit_cost, sol.customer_disassembly) +
                  weighted(inst.disassembly_factory.unit_cost, sol.disassembly_factory);

  out.total = out.fixed + out.variable + out.transport;
  return out;
}

namespace detail {

// sum over t, o, d of G^t * Y * D_od * L^t_od
inline double transport_emission(const TransportLink& link, const Tensor3& flow) {
  double s = 0.0;
  for (std::size_t t = 0; t < flow.options(); ++t) {
    double leg = 0.0;
    for (std::size_t o = 0; o < flow.origins(); ++o)
      for (std::size_t d = 0; d < flow.destinations(); ++d)
        leg += flow(t, o, d) * link.distance(o, d) * link.rate(t, o, d);
    s += link.emission_factor[t] * leg;
  }
  return s;
}

}  // namespace detail

inline EmissionBreakdown evaluate_emissions(const NetworkInstance& inst, const FlowSolution& sol) {
  check_shapes(inst, sol);
  const auto& d = inst.dims;
  const double rho = inst.reliability();
  EmissionBreakdown out;

  for (std::size_t f = 0; f < d.factories; ++f) {
    const double produced = sol.factory_warehouse.origin_total(f);
    out.production += inst.production_emission[f] * produced;
    out.assembly += inst.assembly_emission[f] * produced;
  }
  double handled = 0.0;
  for (std::size_t w = 0; w < d.warehouses; ++w)
    handled += inst.handling_emission[w] * sol.warehouse_customer.origin_total(w);
  out.handling = rho * handled;
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    out.disassembly += inst.disassembly_emission[i] * sol.customer_disassembly.destination_total(i);
  for (std::size_t f = 0; f < d.factories; ++f)
    out.remanufacturing += inst.remanufacturing_emission[f] * sol.disassembly_factory.destination_total(f);

  out.transport = detail::transport_emission(inst.factory_warehouse, sol.factory_warehouse) +
                  rho * detail::transport_emission(inst.warehouse_customer, sol.warehouse_customer) +
                  detail::transport_emission(inst.customer_disassembly, sol.customer_disassembly) +
                  detail::transport_emission(inst.disassembly_factory, sol.disassembly_factory);

  out.total = out.production + out.handling + out.disassembly + out.remanufacturing + out.transport;
  if (inst.include_assembly_emissions) out.total += out.assembly;
  return out;
}

// ---------------------------------------------------------------------------
// Constraints

inline FeasibilityReport check_feasibility(const NetworkInstance& inst, const FlowSolution& sol,
                                           double tol = default_constraint_tolerance,
                                           IndicatorMode mode = IndicatorMode::binary) {
  if (!(tol >= 0.0)) throw InvalidParameter("tolerance must be >= 0");
  check_shapes(inst, sol);
  const auto& d = inst.dims;
  const auto& ya = sol.factory_warehouse;
  const auto& yb = sol.warehouse_customer;
  const auto& yc = sol.customer_disassembly;
  const auto& yd = sol.disassembly_factory;

  FeasibilityReport report;
  auto record = [&](ConstraintFamily family, std::size_t entity, double slack) {
    if (slack < -tol || std::isnan(slack)) report.violations.push_back({family, entity, slack, tol});
  };

  for (std::size_t f = 0; f < d.factories; ++f)
    record(ConstraintFamily::factory_capacity, f,
           inst.production_capacity[f] * sol.factory_open[f] - ya.origin_total(f));
  for (std::size_t w = 0; w < d.warehouses; ++w)
    record(ConstraintFamily::warehouse_capacity, w,
           inst.warehouse_capacity[w] * sol.warehouse_open[w] - ya.destination_total(w));
  for (std::size_t w = 0; w < d.warehouses; ++w)
    record(ConstraintFamily::warehouse_balance, w, ya.destination_total(w) - yb.origin_total(w));
  for (std::size_t c = 0; c < d.customers; ++c)
    record(ConstraintFamily::demand, c, yb.destination_total(c) - inst.demand[c]);
  for (std::size_t c = 0; c < d.customers; ++c)
    record(ConstraintFamily::collection_limit, c, inst.demand[c] - yc.origin_total(c));
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    record(ConstraintFamily::disassembly_capacity, i,
           inst.disassembly_capacity[i] * sol.disassembly_open[i] - yc.destination_total(i));
  for (std::size_t c = 0; c < d.customers; ++c)
    record(ConstraintFamily::minimum_collection, c,
           yc.origin_total(c) - inst.min_collection_share * inst.demand[c]);
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    record(ConstraintFamily::minimum_demolition, i,
           yd.origin_total(i) - inst.min_demolition_share * yc.destination_total(i));
  for (std::size_t f = 0; f < d.factories; ++f)
    record(ConstraintFamily::remanufacturing_capacity, f,
           inst.remanufacturing_capacity[f] * sol.factory_open[f] - yd.destination_total(f));

  // flat index over Ya, Yb, Yc, Yd in that order
  std::size_t offset = 0;
  for (const Tensor3* flow : {&ya, &yb, &yc, &yd}) {
    for (std::size_t k = 0; k < flow->size(); ++k)
      record(ConstraintFamily::nonnegativity, offset + k, flow->flat()[k]);
    offset += flow->size();
  }

  // flat index over Xa, Xb, Xd in that order
  offset = 0;
  for (const auto* open : {&sol.factory_open, &sol.warehouse_open, &sol.disassembly_open}) {
    for (std::size_t k = 0; k < open->size(); ++k) {
      const double x = (*open)[k];
      double slack;
      if (mode == IndicatorMode::binary)
        slack = -std::min(std::abs(x), std::abs(x - 1.0));
      else
        slack = std::min(x, 1.0 - x);
      record(ConstraintFamily::indicator_domain, offset + k, slack);
    }
    offset += open->size();
  }
  return report;
}

}  // namespace clscnd

#endif  // CLSCND_MODEL_HPP
