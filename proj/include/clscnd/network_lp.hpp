#ifndef CLSCND_NETWORK_LP_HPP
#define CLSCND_NETWORK_LP_HPP

// Matrix image of the network model. Columns are ordered
//   Xa, Xb, Xd, Ya, Yb, Yc, Yd
// with flow blocks flattened [option][origin][destination]; rows are the
// constraint families C12..C20 in order, each family indexed by its entity,
// followed by optional objective caps.

#include <clscnd/lp.hpp>
#include <clscnd/model.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace clscnd {

enum class ObjectiveMode { cost, emissions, cost_with_emission_cap };
enum class Objective { cost, emissions };

/// Minimize one objective, optionally with an upper bound on either objective.
struct ObjectiveSpec {
  Objective minimize = Objective::cost;
  std::optional<double> cost_cap;
  std::optional<double> emission_cap;
};

class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(const Dimensions& d) : dims_(d) {
    xa_ = 0;
    xb_ = xa_ + d.factories;
    xd_ = xb_ + d.warehouses;
    ya_ = xd_ + d.disassembly_centers;
    yb_ = ya_ + d.factory_options * d.factories * d.warehouses;
    yc_ = yb_ + d.warehouse_options * d.warehouses * d.customers;
    yd_ = yc_ + d.customer_options * d.customers * d.disassembly_centers;
    end_ = yd_ + d.disassembly_options * d.disassembly_centers * d.factories;
  }

  std::size_t size() const noexcept { return end_; }
  std::size_t indicator_count() const noexcept { return ya_; }

  std::size_t xa(std::size_t f) const { return xa_ + f; }
  std::size_t xb(std::size_t w) const { return xb_ + w; }
  std::size_t xd(std::size_t i) const { return xd_ + i; }
  std::size_t ya(std::size_t t, std::size_t f, std::size_t w) const {
    return ya_ + (t * dims_.factories + f) * dims_.warehouses + w;
  }
  std::size_t yb(std::size_t t, std::size_t w, std::size_t c) const {
    return yb_ + (t * dims_.warehouses + w) * dims_.customers + c;
  }
  std::size_t yc(std::size_t t, std::size_t c, std::size_t i) const {
    return yc_ + (t * dims_.customers + c) * dims_.disassembly_centers + i;
  }
  std::size_t yd(std::size_t t, std::size_t i, std::size_t f) const {
    return yd_ + (t * dims_.disassembly_centers + i) * dims_.factories + f;
  }

  FlowSolution decode(const std::vector<double>& x) const {
    if (x.size() != end_) throw DimensionError("decode: point length mismatch");
    FlowSolution s = FlowSolution::zeros(dims_);
    std::copy(x.begin() + xa_, x.begin() + xb_, s.factory_open.begin());
    std::copy(x.begin() + xb_, x.begin() + xd_, s.warehouse_open.begin());
    std::copy(x.begin() + xd_, x.begin() + ya_, s.disassembly_open.begin());
    std::copy(x.begin() + ya_, x.begin() + yb_, s.factory_warehouse.flat().begin());
    std::copy(x.begin() + yb_, x.begin() + yc_, s.warehouse_customer.flat().begin());
    std::copy(x.begin() + yc_, x.begin() + yd_, s.customer_disassembly.flat().begin());
    std::copy(x.begin() + yd_, x.begin() + end_, s.disassembly_factory.flat().begin());
    return s;
  }

  std::vector<double> encode(const FlowSolution& s) const {
    std::vector<double> x;
    x.reserve(end_);
    x.insert(x.end(), s.factory_open.begin(), s.factory_open.end());
    x.insert(x.end(), s.warehouse_open.begin(), s.warehouse_open.end());
    x.insert(x.end(), s.disassembly_open.begin(), s.disassembly_open.end());
    for (const Tensor3* t : {&s.factory_warehouse, &s.warehouse_customer, &s.customer_disassembly,
                             &s.disassembly_factory})
      x.insert(x.end(), t->flat().begin(), t->flat().end());
    if (x.size() != end_) throw DimensionError("encode: solution shape mismatch");
    return x;
  }

  const Dimensions& dims() const noexcept { return dims_; }

 private:
  Dimensions dims_;
  std::size_t xa_ = 0, xb_ = 0, xd_ = 0, ya_ = 0, yb_ = 0, yc_ = 0, yd_ = 0, end_ = 0;
};

struct NetworkProgram {
  LinearProgram lp;
  VariableLayout layout;

  FlowSolution decode(const std::vector<double>& x) const { return layout.decode(x); }
};

/// Per-column coefficients of the total cost, including fixed costs on the
/// indicator columns.
inline std::vector<double> cost_coefficients(const NetworkInstance& inst, const VariableLayout& v) {
  const auto& d = inst.dims;
  const double rho = inst.reliability();
  std::vector<double> c(v.size(), 0.0);
  for (std::size_t f = 0; f < d.factories; ++f) c[v.xa(f)] = inst.factory_fixed_cost[f];
  for (std::size_t w = 0; w < d.warehouses; ++w) c[v.xb(w)] = inst.warehouse_fixed_cost[w];
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) c[v.xd(i)] = inst.disassembly_fixed_cost[i];
  for (std::size_t t = 0; t < d.factory_options; ++t)
    for (std::size_t f = 0; f < d.factories; ++f)
      for (std::size_t w = 0; w < d.warehouses; ++w)
        c[v.ya(t, f, w)] = inst.production_cost[f] + inst.factory_warehouse.unit_cost(t, f, w);
  for (std::size_t t = 0; t < d.warehouse_options; ++t)
    for (std::size_t w = 0; w < d.warehouses; ++w)
      for (std::size_t k = 0; k < d.customers; ++k)
        c[v.yb(t, w, k)] = rho * (inst.handling_cost[w] + inst.warehouse_customer.unit_cost(t, w, k));
  for (std::size_t t = 0; t < d.customer_options; ++t)
    for (std::size_t k = 0; k < d.customers; ++k)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i)
        c[v.yc(t, k, i)] =
            inst.collection_cost[k] + inst.disassembly_cost[i] + inst.customer_disassembly.unit_cost(t, k, i);
  for (std::size_t t = 0; t < d.disassembly_options; ++t)
    for (std::size_t i = 0; i < d.disassembly_centers; ++i)
      for (std::size_t f = 0; f < d.factories; ++f)
        c[v.yd(t, i, f)] = inst.remanufacturing_cost[f] + inst.disassembly_factory.unit_cost(t, i, f);
  return c;
}

/// Per-column coefficients of total emissions, reliability-weighted exactly
/// as evaluate_emissions. Indicator columns carry zero.
inline std::vector<double> emission_coefficients(const NetworkInstance& inst, const VariableLayout& v) {
  const auto& d = inst.dims;
  const double rho = inst.reliability();
  std::vector<double> e(v.size(), 0.0);
  const auto& fw = inst.factory_warehouse;
  const auto& wc = inst.warehouse_customer;
  const auto& ci = inst.customer_disassembly;
  const auto& df = inst.disassembly_factory;
  for (std::size_t t = 0; t < d.factory_options; ++t)
    for (std::size_t f = 0; f < d.factories; ++f)
      for (std::size_t w = 0; w < d.warehouses; ++w) {
        double g = inst.production_emission[f] + fw.emission_factor[t] * fw.distance(f, w) * fw.rate(t, f, w);
        if (inst.include_assembly_emissions) g += inst.assembly_emission[f];
        e[v.ya(t, f, w)] = g;
      }
  for (std::size_t t = 0; t < d.warehouse_options; ++t)
    for (std::size_t w = 0; w < d.warehouses; ++w)
      for (std::size_t k = 0; k < d.customers; ++k)
        e[v.yb(t, w, k)] =
            rho * (inst.handling_emission[w] + wc.emission_factor[t] * wc.distance(w, k) * wc.rate(t, w, k));
  for (std::size_t t = 0; t < d.customer_options; ++t)
    for (std::size_t k = 0; k < d.customers; ++k)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i)
        e[v.yc(t, k, i)] =
            inst.disassembly_emission[i] + ci.emission_factor[t] * ci.distance(k, i) * ci.rate(t, k, i);
  for (std::size_t t = 0; t < d.disassembly_options; ++t)
    for (std::size_t i = 0; i < d.disassembly_centers; ++i)
      for (std::size_t f = 0; f < d.factories; ++f)
        e[v.yd(t, i, f)] =
            inst.remanufacturing_emission[f] + df.emission_factor[t] * df.distance(i, f) * df.rate(t, i, f);
  return e;
}

namespace detail {

inline std::string index_suffix(std::size_t a) { return std::to_string(a + 1); }

inline std::string flow_name(const char* stem, std::size_t t, std::size_t o, std::size_t d) {
  return std::string(stem) + "_" + index_suffix(o) + "," + index_suffix(d) + "^" + index_suffix(t);
}

}  // namespace detail

/// General form: one objective minimized, caps on either objective.
inline NetworkProgram build_milp(const NetworkInstance& inst, const ObjectiveSpec& spec,
                                 IndicatorMode mode = IndicatorMode::binary) {
  inst.validate();
  const auto& d = inst.dims;
  NetworkProgram prog{LinearProgram{}, VariableLayout(d)};
  const auto& v = prog.layout;
  auto& lp = prog.lp;

  const auto cost = cost_coefficients(inst, v);
  const auto emis = emission_coefficients(inst, v);
  const auto& objective = spec.minimize == Objective::cost ? cost : emis;
  const bool binary = mode == IndicatorMode::binary;

  for (std::size_t f = 0; f < d.factories; ++f)
    lp.add_variable("Xa_" + detail::index_suffix(f), objective[v.xa(f)], 0.0, 1.0, binary);
  for (std::size_t w = 0; w < d.warehouses; ++w)
    lp.add_variable("Xb_" + detail::index_suffix(w), objective[v.xb(w)], 0.0, 1.0, binary);
  for (std::size_t i = 0; i < d.disassembly_centers; ++i)
    lp.add_variable("Xd_" + detail::index_suffix(i), objective[v.xd(i)], 0.0, 1.0, binary);
  for (std::size_t t = 0; t < d.factory_options; ++t)
    for (std::size_t f = 0; f < d.factories; ++f)
      for (std::size_t w = 0; w < d.warehouses; ++w)
        lp.add_variable(detail::flow_name("Ya", t, f, w), objective[v.ya(t, f, w)]);
  for (std::size_t t = 0; t < d.warehouse_options; ++t)
    for (std::size_t w = 0; w < d.warehouses; ++w)
      for (std::size_t k = 0; k < d.customers; ++k)
        lp.add_variable(detail::flow_name("Yb", t, w, k), objective[v.yb(t, w, k)]);
  for (std::size_t t = 0; t < d.customer_options; ++t)
    for (std::size_t k = 0; k < d.customers; ++k)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i)
        lp.add_variable(detail::flow_name("Yc", t, k, i), objective[v.yc(t, k, i)]);
  for (std::size_t t = 0; t < d.disassembly_options; ++t)
    for (std::size_t i = 0; i < d.disassembly_centers; ++i)
      for (std::size_t f = 0; f < d.factories; ++f)
        lp.add_variable(detail::flow_name("Yd", t, i, f), objective[v.yd(t, i, f)]);

  const std::size_t n = v.size();
  auto new_row = [&](Relation rel, double rhs, std::string name) {
    return Row{std::vector<double>(n, 0.0), rel, rhs, std::move(name)};
  };
  auto named = [](const char* family, std::size_t e) { return std::string(family) + "[" + std::to_string(e + 1) + "]"; };

  // C12: sum_{w,t} Ya_fw - Pa_f Xa_f <= 0
  for (std::size_t f = 0; f < d.factories; ++f) {
    auto r = new_row(Relation::less_equal, 0.0, named("C12", f));
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) r.coefficients[v.ya(t, f, w)] = 1.0;
    r.coefficients[v.xa(f)] = -inst.production_capacity[f];
    lp.add_row(std::move(r));
  }
  // C13: sum_{f,t} Ya_fw - Pb_w Xb_w <= 0
  for (std::size_t w = 0; w < d.warehouses; ++w) {
    auto r = new_row(Relation::less_equal, 0.0, named("C13", w));
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) r.coefficients[v.ya(t, f, w)] = 1.0;
    r.coefficients[v.xb(w)] = -inst.warehouse_capacity[w];
    lp.add_row(std::move(r));
  }
  // C14: sum_{c,t} Yb_wc - sum_{f,t} Ya_fw <= 0
  for (std::size_t w = 0; w < d.warehouses; ++w) {
    auto r = new_row(Relation::less_equal, 0.0, named("C14", w));
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t k = 0; k < d.customers; ++k) r.coefficients[v.yb(t, w, k)] = 1.0;
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) r.coefficients[v.ya(t, f, w)] = -1.0;
    lp.add_row(std::move(r));
  }
  // C15: sum_{w,t} Yb_wc >= Q_c
  for (std::size_t k = 0; k < d.customers; ++k) {
    auto r = new_row(Relation::greater_equal, inst.demand[k], named("C15", k));
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) r.coefficients[v.yb(t, w, k)] = 1.0;
    lp.add_row(std::move(r));
  }
  // C16: sum_{i,t} Yc_ci <= Q_c
  for (std::size_t k = 0; k < d.customers; ++k) {
    auto r = new_row(Relation::less_equal, inst.demand[k], named("C16", k));
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) r.coefficients[v.yc(t, k, i)] = 1.0;
    lp.add_row(std::move(r));
  }
  // C17: sum_{c,t} Yc_ci - Pd_i Xd_i <= 0
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
    auto r = new_row(Relation::less_equal, 0.0, named("C17", i));
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t k = 0; k < d.customers; ++k) r.coefficients[v.yc(t, k, i)] = 1.0;
    r.coefficients[v.xd(i)] = -inst.disassembly_capacity[i];
    lp.add_row(std::move(r));
  }
  // C18: sum_{i,t} Yc_ci >= Hd Q_c
  for (std::size_t k = 0; k < d.customers; ++k) {
    auto r = new_row(Relation::greater_equal, inst.min_collection_share * inst.demand[k], named("C18", k));
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) r.coefficients[v.yc(t, k, i)] = 1.0;
    lp.add_row(std::move(r));
  }
  // C19: sum_{f,t} Yd_if - Hr sum_{c,t} Yc_ci >= 0
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
    auto r = new_row(Relation::greater_equal, 0.0, named("C19", i));
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) r.coefficients[v.yd(t, i, f)] = 1.0;
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t k = 0; k < d.customers; ++k) r.coefficients[v.yc(t, k, i)] = -inst.min_demolition_share;
    lp.add_row(std::move(r));
  }
  // C20: sum_{i,t} Yd_if - Pr_f Xa_f <= 0
  for (std::size_t f = 0; f < d.factories; ++f) {
    auto r = new_row(Relation::less_equal, 0.0, named("C20", f));
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) r.coefficients[v.yd(t, i, f)] = 1.0;
    r.coefficients[v.xa(f)] = -inst.remanufacturing_capacity[f];
    lp.add_row(std::move(r));
  }

  if (spec.cost_cap) lp.add_row(Row{cost, Relation::less_equal, *spec.cost_cap, "cost_cap"});
  if (spec.emission_cap) lp.add_row(Row{emis, Relation::less_equal, *spec.emission_cap, "emission_cap"});
  return prog;
}

inline NetworkProgram build_milp(const NetworkInstance& inst, ObjectiveMode mode,
                                 std::optional<double> emission_cap = std::nullopt,
                                 IndicatorMode indicators = IndicatorMode::binary) {
  ObjectiveSpec spec;
  switch (mode) {
    case ObjectiveMode::cost:
      spec.minimize = Objective::cost;
      break;
    case ObjectiveMode::emissions:
      spec.minimize = Objective::emissions;
      break;
    case ObjectiveMode::cost_with_emission_cap:
      if (!emission_cap) throw InvalidParameter("cost_with_emission_cap requires an emission cap");
      spec.minimize = Objective::cost;
      break;
  }
  if (mode != ObjectiveMode::cost_with_emission_cap && emission_cap)
    throw InvalidParameter("emission cap is only valid in cost_with_emission_cap mode");
  spec.emission_cap = emission_cap;
  return build_milp(inst, spec, indicators);
}

}  // namespace clscnd

#endif  // CLSCND_NETWORK_LP_HPP
