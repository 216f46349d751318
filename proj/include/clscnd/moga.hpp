#ifndef CLSCND_MOGA_HPP
#define CLSCND_MOGA_HPP

#include <clscnd/detail/parallel.hpp>
#include <clscnd/detail/random.hpp>
#include <clscnd/errors.hpp>
#include <clscnd/instance_io.hpp>
#include <clscnd/model.hpp>
#include <clscnd/network_lp.hpp>
#include <clscnd/pareto.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace clscnd {

enum class PenaltyMode { feasibility_dominance, weighted_penalty };

struct GaConfig {
  std::size_t population = 100;
  std::size_t generations = 250;
  double crossover_probability = 0.9;
  std::optional<double> mutation_probability;  // default 1 / gene count
  double crossover_eta = 15.0;
  double mutation_eta = 20.0;
  PenaltyMode penalty = PenaltyMode::feasibility_dominance;
  double penalty_weight = 1e6;  // weighted-penalty mode only
  double indicator_threshold = 0.5;
  IndicatorMode indicators = IndicatorMode::binary;  // relaxed: indicator genes used as-is
  double tolerance = default_constraint_tolerance;
  bool tighten = true;  // trim surplus flow after repair
  double snap_fraction = 0.25;  // with tighten: drop flows below this share of their row
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: all cores

  void validate() const {
    if (population < 2) throw InvalidParameter("population size must be >= 2");
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(crossover_probability)) throw InvalidParameter("crossover probability must lie in [0, 1]");
    if (mutation_probability && !prob(*mutation_probability))
      throw InvalidParameter("mutation probability must lie in [0, 1]");
    if (!prob(indicator_threshold)) throw InvalidParameter("indicator threshold must lie in [0, 1]");
    if (!(crossover_eta >= 0.0) || !(mutation_eta >= 0.0))
      throw InvalidParameter("distribution indices must be >= 0");
    if (!(penalty_weight >= 0.0)) throw InvalidParameter("penalty weight must be >= 0");
    if (!(tolerance >= 0.0)) throw InvalidParameter("tolerance must be >= 0");
    if (!(snap_fraction >= 0.0 && snap_fraction < 1.0)) throw InvalidParameter("snap fraction must lie in [0, 1)");
  }
};

struct Chromosome {
  std::vector<double> genes;  // flows (Ya, Yb, Yc, Yd), then indicators (Xa, Xb, Xd)
  FlowSolution solution;      // repaired phenotype
  ObjectivePoint objectives;
  double violation = 0.0;
  std::size_t born = 0;  // generation that created it
};

/// Maps chromosomes to flow solutions and back. Flow genes are bounded by the
/// tighter of the two capacities an arc touches (demand for customer arcs).
class GeneLayout {
 public:
  explicit GeneLayout(const NetworkInstance& inst) : vars_(inst.dims) {
    const auto& d = inst.dims;
    flows_ = vars_.size() - vars_.indicator_count();
    lower_.assign(size(), 0.0);
    upper_.reserve(size());
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f)
        for (std::size_t w = 0; w < d.warehouses; ++w)
          upper_.push_back(std::min(inst.production_capacity[f], inst.warehouse_capacity[w]));
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w)
        for (std::size_t c = 0; c < d.customers; ++c)
          upper_.push_back(std::min(inst.warehouse_capacity[w], inst.demand[c]));
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t c = 0; c < d.customers; ++c)
        for (std::size_t i = 0; i < d.disassembly_centers; ++i)
          upper_.push_back(std::min(inst.demand[c], inst.disassembly_capacity[i]));
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i)
        for (std::size_t f = 0; f < d.factories; ++f)
          upper_.push_back(std::min(inst.disassembly_capacity[i], inst.remanufacturing_capacity[f]));
    upper_.resize(size(), 1.0);
  }

  std::size_t size() const noexcept { return vars_.size(); }
  std::size_t flow_count() const noexcept { return flows_; }
  double lower(std::size_t g) const { return lower_[g]; }
  double upper(std::size_t g) const { return upper_[g]; }

  /// Flow tensors copied verbatim; indicators decoded by threshold (binary
  /// mode) or taken as they are (relaxed mode).
  FlowSolution decode(const std::vector<double>& genes, double threshold,
                      IndicatorMode mode = IndicatorMode::binary) const {
    if (genes.size() != size()) throw DimensionError("chromosome length mismatch");
    // Gene order is the LP column order rotated so flows come first.
    std::vector<double> x(size());
    const std::size_t k = vars_.indicator_count();
    std::copy(genes.begin() + flows_, genes.end(), x.begin());
    std::copy(genes.begin(), genes.begin() + flows_, x.begin() + k);
    if (mode == IndicatorMode::binary)
      for (std::size_t j = 0; j < k; ++j) x[j] = x[j] >= threshold ? 1.0 : 0.0;
    return vars_.decode(x);
  }

  /// Inverse of decode for the flow part; indicator genes are taken as given.
  std::vector<double> encode(const FlowSolution& s) const {
    const auto x = vars_.encode(s);
    const std::size_t k = vars_.indicator_count();
    std::vector<double> genes(size());
    std::copy(x.begin() + k, x.end(), genes.begin());
    std::copy(x.begin(), x.begin() + k, genes.begin() + flows_);
    return genes;
  }

 private:
  VariableLayout vars_;
  std::size_t flows_ = 0;
  std::vector<double> lower_, upper_;
};

namespace detail {

/// Adds `need` units spread proportionally over `weights`; false if all weights are 0.
inline bool spread(std::vector<double*>& cells, const std::vector<double>& weights, double need) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0.0) return false;
  for (std::size_t k = 0; k < cells.size(); ++k) *cells[k] += need * weights[k] / total;
  return true;
}

/// Raises the sum of `cells` to `target`: proportional scale-up of the
/// current flows, or capacity-weighted allocation when they are all zero.
inline void raise_to(std::vector<double*>& cells, const std::vector<double>& capacity_weights, double target) {
  double sum = 0.0;
  for (double* c : cells) sum += *c;
  if (sum >= target) return;
  if (sum > 0.0) {
    const double f = target / sum;
    for (double* c : cells) *c *= f;
    return;
  }
  spread(cells, capacity_weights, target);
}

inline void lower_to(std::vector<double*>& cells, double limit) {
  double sum = 0.0;
  for (double* c : cells) sum += *c;
  if (sum <= limit) return;
  const double f = sum > 0.0 ? std::max(0.0, limit) / sum : 0.0;
  for (double* c : cells) *c *= f;
}

}  // namespace detail

/// Deterministic single-pass projection toward feasibility. Works on the
/// decoded solution: closed facilities lose their flows, shortfalls in C15,
/// C14, C18 and C19 are raised, then capacity rows are enforced by scaling
/// down. Whatever remains is reported as the violation.
inline FlowSolution repair_solution(const NetworkInstance& inst, FlowSolution s) {
  const auto& d = inst.dims;
  auto& ya = s.factory_warehouse;
  auto& yb = s.warehouse_customer;
  auto& yc = s.customer_disassembly;
  auto& yd = s.disassembly_factory;
  const auto& xa = s.factory_open;
  const auto& xb = s.warehouse_open;
  const auto& xd = s.disassembly_open;

  // closed facilities carry nothing
  for (std::size_t t = 0; t < d.factory_options; ++t)
    for (std::size_t f = 0; f < d.factories; ++f)
      for (std::size_t w = 0; w < d.warehouses; ++w)
        if (xa[f] == 0.0 || xb[w] == 0.0) ya(t, f, w) = 0.0;
  for (std::size_t t = 0; t < d.warehouse_options; ++t)
    for (std::size_t w = 0; w < d.warehouses; ++w)
      for (std::size_t c = 0; c < d.customers; ++c)
        if (xb[w] == 0.0) yb(t, w, c) = 0.0;
  for (std::size_t t = 0; t < d.customer_options; ++t)
    for (std::size_t c = 0; c < d.customers; ++c)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i)
        if (xd[i] == 0.0) yc(t, c, i) = 0.0;
  for (std::size_t t = 0; t < d.disassembly_options; ++t)
    for (std::size_t i = 0; i < d.disassembly_centers; ++i)
      for (std::size_t f = 0; f < d.factories; ++f)
        if (xd[i] == 0.0 || xa[f] == 0.0) yd(t, i, f) = 0.0;

  std::vector<double*> cells;
  std::vector<double> weights;
  auto reset = [&] {
    cells.clear();
    weights.clear();
  };

  // C15: each customer receives its demand
  for (std::size_t c = 0; c < d.customers; ++c) {
    reset();
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) {
        cells.push_back(&yb(t, w, c));
        weights.push_back(inst.warehouse_capacity[w] * xb[w]);
      }
    detail::raise_to(cells, weights, inst.demand[c]);
  }
  // C14: each warehouse receives what it ships
  for (std::size_t w = 0; w < d.warehouses; ++w) {
    reset();
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) {
        cells.push_back(&ya(t, f, w));
        weights.push_back(inst.production_capacity[f] * xa[f] * xb[w]);
      }
    detail::raise_to(cells, weights, yb.origin_total(w));
  }
  // C18: minimum collection per customer
  for (std::size_t c = 0; c < d.customers; ++c) {
    reset();
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
        cells.push_back(&yc(t, c, i));
        weights.push_back(inst.disassembly_capacity[i] * xd[i]);
      }
    detail::raise_to(cells, weights, inst.min_collection_share * inst.demand[c]);
  }
  // C19: minimum demolition share per center
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
    reset();
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) {
        cells.push_back(&yd(t, i, f));
        weights.push_back(inst.remanufacturing_capacity[f] * xa[f] * xd[i]);
      }
    detail::raise_to(cells, weights, inst.min_demolition_share * yc.destination_total(i));
  }

  // capacity rows, upstream first so each cut propagates downstream
  for (std::size_t f = 0; f < d.factories; ++f) {  // C12
    reset();
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) cells.push_back(&ya(t, f, w));
    detail::lower_to(cells, inst.production_capacity[f] * xa[f]);
  }
  for (std::size_t w = 0; w < d.warehouses; ++w) {  // C13
    reset();
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) cells.push_back(&ya(t, f, w));
    detail::lower_to(cells, inst.warehouse_capacity[w] * xb[w]);
  }
  for (std::size_t w = 0; w < d.warehouses; ++w) {  // C14
    reset();
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t c = 0; c < d.customers; ++c) cells.push_back(&yb(t, w, c));
    detail::lower_to(cells, ya.destination_total(w));
  }
  for (std::size_t c = 0; c < d.customers; ++c) {  // C16
    reset();
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) cells.push_back(&yc(t, c, i));
    detail::lower_to(cells, inst.demand[c]);
  }
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {  // C17
    reset();
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t c = 0; c < d.customers; ++c) cells.push_back(&yc(t, c, i));
    detail::lower_to(cells, inst.disassembly_capacity[i] * xd[i]);
  }
  for (std::size_t f = 0; f < d.factories; ++f) {  // C20
    reset();
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) cells.push_back(&yd(t, i, f));
    detail::lower_to(cells, inst.remanufacturing_capacity[f] * xa[f]);
  }
  return s;
}

/// Trims surplus flow: the balance and minimum-share rows (C15, C14, C18,
/// C19) are scaled down to equality where they hold with slack. Only flows
/// decrease and only toward those bounds, so no constraint gets worse. All
/// cost and emission coefficients are nonnegative, so neither objective gets
/// worse either.
inline FlowSolution tighten_solution(const NetworkInstance& inst, FlowSolution s) {
  const auto& d = inst.dims;
  auto& ya = s.factory_warehouse;
  auto& yb = s.warehouse_customer;
  auto& yc = s.customer_disassembly;
  auto& yd = s.disassembly_factory;
  std::vector<double*> cells;
  for (std::size_t c = 0; c < d.customers; ++c) {
    cells.clear();
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) cells.push_back(&yb(t, w, c));
    detail::lower_to(cells, inst.demand[c]);
  }
  for (std::size_t w = 0; w < d.warehouses; ++w) {
    cells.clear();
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) cells.push_back(&ya(t, f, w));
    detail::lower_to(cells, yb.origin_total(w));
  }
  for (std::size_t c = 0; c < d.customers; ++c) {
    cells.clear();
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) cells.push_back(&yc(t, c, i));
    detail::lower_to(cells, inst.min_collection_share * inst.demand[c]);
  }
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
    cells.clear();
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) cells.push_back(&yd(t, i, f));
    detail::lower_to(cells, inst.min_demolition_share * yc.destination_total(i));
  }
  return s;
}

/// Zeroes every flow that carries less than `fraction` of its group's total,
/// where the groups are the inflows of the balance and minimum-share rows
/// (per customer for Yb and Yc, per warehouse for Ya, per center for Yd).
inline FlowSolution snap_solution(const NetworkInstance& inst, FlowSolution s, double fraction) {
  const auto& d = inst.dims;
  auto& ya = s.factory_warehouse;
  auto& yb = s.warehouse_customer;
  auto& yc = s.customer_disassembly;
  auto& yd = s.disassembly_factory;
  std::vector<double*> cells;
  auto snap = [&] {
    double sum = 0.0;
    for (double* c : cells) sum += *c;
    for (double* c : cells)
      if (*c < fraction * sum) *c = 0.0;
    cells.clear();
  };
  for (std::size_t c = 0; c < d.customers; ++c) {
    for (std::size_t t = 0; t < d.warehouse_options; ++t)
      for (std::size_t w = 0; w < d.warehouses; ++w) cells.push_back(&yb(t, w, c));
    snap();
  }
  for (std::size_t w = 0; w < d.warehouses; ++w) {
    for (std::size_t t = 0; t < d.factory_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) cells.push_back(&ya(t, f, w));
    snap();
  }
  for (std::size_t c = 0; c < d.customers; ++c) {
    for (std::size_t t = 0; t < d.customer_options; ++t)
      for (std::size_t i = 0; i < d.disassembly_centers; ++i) cells.push_back(&yc(t, c, i));
    snap();
  }
  for (std::size_t i = 0; i < d.disassembly_centers; ++i) {
    for (std::size_t t = 0; t < d.disassembly_options; ++t)
      for (std::size_t f = 0; f < d.factories; ++f) cells.push_back(&yd(t, i, f));
    snap();
  }
  return s;
}

namespace detail {

/// Writes positive flows back into the genes and refreshes the cached fields.
/// Genes whose flow is zero (for instance on arcs of closed facilities) and
/// indicator genes keep their values, so reopening a facility restores its
/// old routing.
inline Chromosome store(const NetworkInstance& inst, const GeneLayout& layout, Chromosome c, FlowSolution sol,
                        const GaConfig& config) {
  const auto flows = layout.encode(sol);
  for (std::size_t g = 0; g < layout.flow_count(); ++g)
    if (flows[g] > 0.0) c.genes[g] = flows[g];
  c.objectives = {evaluate_cost(inst, sol).total, evaluate_emissions(inst, sol).total};
  c.violation = check_feasibility(inst, sol, config.tolerance, config.indicators).total_violation();
  c.solution = std::move(sol);
  return c;
}

inline Chromosome clamp_genes(const GeneLayout& layout, Chromosome c) {
  for (std::size_t g = 0; g < layout.size(); ++g) c.genes[g] = std::clamp(c.genes[g], layout.lower(g), layout.upper(g));
  return c;
}

/// Repair, then (if enabled) surplus trimming.
inline Chromosome develop(const NetworkInstance& inst, const GeneLayout& layout, Chromosome c, const GaConfig& config) {
  c = clamp_genes(layout, std::move(c));
  auto sol = repair_solution(inst, layout.decode(c.genes, config.indicator_threshold, config.indicators));
  if (config.tighten) {
    sol = tighten_solution(inst, std::move(sol));
    if (config.snap_fraction > 0.0) {
      auto snapped = tighten_solution(inst, repair_solution(inst, snap_solution(inst, sol, config.snap_fraction)));
      if (check_feasibility(inst, snapped, config.tolerance, config.indicators).total_violation() <=
          check_feasibility(inst, sol, config.tolerance, config.indicators).total_violation())
        sol = std::move(snapped);
    }
  }
  return store(inst, layout, std::move(c), std::move(sol), config);
}

}  // namespace detail

/// Decodes, repairs and writes the repaired flows back into the genes;
/// refreshes objectives and violation. Indicator genes keep their values.
inline Chromosome repair(const NetworkInstance& inst, Chromosome c, const GaConfig& config = {}) {
  const GeneLayout layout(inst);
  c = detail::clamp_genes(layout, std::move(c));
  auto sol = repair_solution(inst, layout.decode(c.genes, config.indicator_threshold, config.indicators));
  return detail::store(inst, layout, std::move(c), std::move(sol), config);
}

inline std::vector<Chromosome> initialize_population(const NetworkInstance& inst, const GaConfig& config) {
  config.validate();
  inst.validate();
  const GeneLayout layout(inst);
  std::vector<Chromosome> pop(config.population);
  for (std::size_t k = 0; k < pop.size(); ++k) {
    auto rng = detail::make_stream({config.seed, 0, k});
    pop[k].genes.resize(layout.size());
    for (std::size_t g = 0; g < layout.size(); ++g)
      pop[k].genes[g] = detail::uniform(rng, layout.lower(g), layout.upper(g));
  }
  detail::parallel_for(pop.size(), config.threads,
                       [&](std::size_t k) { pop[k] = detail::develop(inst, layout, std::move(pop[k]), config); });
  return pop;
}

// ---------------------------------------------------------------------------
// Ranking

struct RankInput {
  ObjectivePoint objectives;
  double violation = 0.0;
};

/// Feasible beats infeasible; among infeasible the smaller violation wins;
/// among feasible, Pareto dominance.
inline bool constrained_dominates(const RankInput& a, const RankInput& b) {
  const bool fa = a.violation <= 0.0, fb = b.violation <= 0.0;
  if (fa != fb) return fa;
  if (!fa) return a.violation < b.violation;
  return dominates(a.objectives, b.objectives);
}

/// Fast nondominated sort; fronts hold indices in ascending order.
inline std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<RankInput>& items) {
  const std::size_t n = items.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (constrained_dominates(items[p], items[q])) dominated[p].push_back(q);
      else if (constrained_dominates(items[q], items[p])) ++count[p];
    }
    if (count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (auto p : current)
      for (auto q : dominated[p])
        if (--count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

/// Crowding distance per point of one front. Endpoints of each objective are
/// infinite; an objective with zero range contributes nothing.
inline std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) return std::vector<double>(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order(n);
  for (int m = 0; m < 2; ++m) {
    auto val = [&](std::size_t i) { return m == 0 ? front[i].f1 : front[i].f2; };
    auto other = [&](std::size_t i) { return m == 0 ? front[i].f2 : front[i].f1; };
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (val(a) != val(b)) return val(a) < val(b);
      if (other(a) != other(b)) return other(a) < other(b);
      return a < b;
    });
    const double range = val(order.back()) - val(order.front());
    dist[order.front()] = dist[order.back()] = std::numeric_limits<double>::infinity();
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) dist[order[k]] += (val(order[k + 1]) - val(order[k - 1])) / range;
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Variation

namespace detail {

/// Simulated binary crossover on one gene pair, bounded to [lo, hi].
inline void sbx(double& x1, double& x2, double lo, double hi, double eta, Rng& rng) {
  const double u_swap = uniform01(rng);
  const double u = uniform01(rng);
  if (std::abs(x1 - x2) <= 1e-14 || hi <= lo) return;
  const double y1 = std::min(x1, x2), y2 = std::max(x1, x2);
  const double e = 1.0 / (eta + 1.0);
  auto child = [&](double beta) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    return u <= 1.0 / alpha ? std::pow(u * alpha, e) : std::pow(1.0 / (2.0 - u * alpha), e);
  };
  const double bq1 = child(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
  const double bq2 = child(1.0 + 2.0 * (hi - y2) / (y2 - y1));
  double c1 = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lo, hi);
  double c2 = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lo, hi);
  if (u_swap < 0.5) std::swap(c1, c2);
  x1 = c1;
  x2 = c2;
}

/// Polynomial mutation of one gene, bounded to [lo, hi].
inline double polynomial_mutation(double y, double lo, double hi, double eta, Rng& rng) {
  const double u = uniform01(rng);
  if (hi <= lo) return y;
  const double d1 = (y - lo) / (hi - lo), d2 = (hi - y) / (hi - lo);
  const double p = 1.0 / (eta + 1.0);
  double dq;
  if (u < 0.5) {
    const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
    dq = std::pow(v, p) - 1.0;
  } else {
    const double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    dq = 1.0 - std::pow(v, p);
  }
  return std::clamp(y + dq * (hi - lo), lo, hi);
}

struct Ranked {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

inline std::vector<RankInput> rank_inputs(const std::vector<Chromosome>& pop, const GaConfig& config) {
  std::vector<RankInput> in;
  in.reserve(pop.size());
  for (const auto& c : pop) {
    if (config.penalty == PenaltyMode::weighted_penalty) {
      const double p = config.penalty_weight * c.violation;
      in.push_back({{c.objectives.f1 + p, c.objectives.f2 + p}, 0.0});
    } else {
      in.push_back({c.objectives, c.violation});
    }
  }
  return in;
}

inline Ranked rank_population(const std::vector<RankInput>& in, std::vector<std::vector<std::size_t>>* out_fronts) {
  auto fronts = nondominated_sort(in);
  Ranked r{std::vector<std::size_t>(in.size()), std::vector<double>(in.size())};
  for (std::size_t k = 0; k < fronts.size(); ++k) {
    std::vector<ObjectivePoint> pts;
    for (auto i : fronts[k]) pts.push_back(in[i].objectives);
    const auto cd = crowding_distance(pts);
    for (std::size_t j = 0; j < fronts[k].size(); ++j) {
      r.rank[fronts[k][j]] = k;
      r.crowding[fronts[k][j]] = cd[j];
    }
  }
  if (out_fronts) *out_fronts = std::move(fronts);
  return r;
}

/// Index of the winner of a crowded binary tournament.
inline std::size_t tournament(const Ranked& r, std::size_t n, Rng& rng) {
  const auto a = static_cast<std::size_t>(uniform_index(rng, n));
  const auto b = static_cast<std::size_t>(uniform_index(rng, n));
  if (r.rank[a] != r.rank[b]) return r.rank[a] < r.rank[b] ? a : b;
  if (r.crowding[a] != r.crowding[b]) return r.crowding[a] > r.crowding[b] ? a : b;
  return std::min(a, b);
}

}  // namespace detail

struct GenerationStats {
  std::size_t generation = 0;
  double best_f1 = std::numeric_limits<double>::quiet_NaN();  // over feasible members
  double best_f2 = std::numeric_limits<double>::quiet_NaN();
  std::size_t feasible = 0;
};

inline GenerationStats population_stats(const std::vector<Chromosome>& pop, std::size_t generation) {
  GenerationStats s;
  s.generation = generation;
  for (const auto& c : pop) {
    if (c.violation > 0.0) continue;
    ++s.feasible;
    if (!(s.best_f1 <= c.objectives.f1)) s.best_f1 = c.objectives.f1;
    if (!(s.best_f2 <= c.objectives.f2)) s.best_f2 = c.objectives.f2;
  }
  return s;
}

inline void write_trace_header(std::ostream& os) { os << "generation,best_f1,best_f2,feasible\n"; }

inline void write_trace_row(std::ostream& os, const GenerationStats& s) {
  auto num = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  os << s.generation << ',' << num(s.best_f1) << ',' << num(s.best_f2) << ',' << s.feasible << '\n';
}

inline std::map<std::string, std::string> describe(const GaConfig& c, std::size_t genes) {
  return {{"method", "ga"},
          {"population", std::to_string(c.population)},
          {"generations", std::to_string(c.generations)},
          {"crossover_probability", format_double(c.crossover_probability)},
          {"mutation_probability", format_double(c.mutation_probability.value_or(1.0 / static_cast<double>(genes)))},
          {"crossover_eta", format_double(c.crossover_eta)},
          {"mutation_eta", format_double(c.mutation_eta)},
          {"penalty", c.penalty == PenaltyMode::feasibility_dominance ? "feasibility-dominance" : "weighted-penalty"},
          {"penalty_weight", format_double(c.penalty_weight)},
          {"indicator_threshold", format_double(c.indicator_threshold)},
          {"indicators", c.indicators == IndicatorMode::binary ? "binary" : "relaxed"},
          {"tighten", c.tighten ? "true" : "false"},
          {"snap_fraction", format_double(c.snap_fraction)},
          {"seed", std::to_string(c.seed)}};
}

/// One generation of (mu + lambda) survival. Offspring pair k draws from
/// stream (seed, generation, k), so results do not depend on thread count.
inline std::vector<Chromosome> next_generation(const NetworkInstance& inst, const GaConfig& config,
                                               const GeneLayout& layout, std::vector<Chromosome> pop,
                                               std::size_t generation) {
  const std::size_t n = pop.size();
  const auto ranked = detail::rank_population(detail::rank_inputs(pop, config), nullptr);
  const double pm = config.mutation_probability.value_or(1.0 / static_cast<double>(layout.size()));

  std::vector<Chromosome> children(n);
  const std::size_t pairs = (n + 1) / 2;
  for (std::size_t k = 0; k < pairs; ++k) {
    auto rng = detail::make_stream({config.seed, generation, k});
    Chromosome a = pop[detail::tournament(ranked, n, rng)];
    Chromosome b = pop[detail::tournament(ranked, n, rng)];
    if (detail::uniform01(rng) < config.crossover_probability) {
      for (std::size_t g = 0; g < layout.size(); ++g)
        if (detail::uniform01(rng) < 0.5)
          detail::sbx(a.genes[g], b.genes[g], layout.lower(g), layout.upper(g), config.crossover_eta, rng);
    }
    for (auto* c : {&a, &b})
      for (std::size_t g = 0; g < layout.size(); ++g)
        if (detail::uniform01(rng) < pm)
          c->genes[g] = detail::polynomial_mutation(c->genes[g], layout.lower(g), layout.upper(g), config.mutation_eta, rng);
    a.born = b.born = generation;
    children[2 * k] = std::move(a);
    if (2 * k + 1 < n) children[2 * k + 1] = std::move(b);
  }
  detail::parallel_for(n, config.threads, [&](std::size_t k) { children[k] = detail::develop(inst, layout, std::move(children[k]), config); });

  std::vector<Chromosome> merged = std::move(pop);
  for (auto& c : children) merged.push_back(std::move(c));
  std::vector<std::vector<std::size_t>> fronts;
  const auto r = detail::rank_population(detail::rank_inputs(merged, config), &fronts);

  std::vector<Chromosome> survivors;
  survivors.reserve(n);
  for (const auto& front : fronts) {
    if (survivors.size() + front.size() <= n) {
      for (auto i : front) survivors.push_back(merged[i]);
      continue;
    }
    auto order = front;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return r.crowding[x] > r.crowding[y]; });
    for (std::size_t j = 0; survivors.size() < n; ++j) survivors.push_back(merged[order[j]]);
    break;
  }
  return survivors;
}

/// NSGA-II style search. Returns the feasible members of the final first
/// front; if there are none, an empty front with a diagnostic.
inline ParetoFront evolve(const NetworkInstance& inst, const GaConfig& config, std::ostream* trace = nullptr) {
  config.validate();
  const GeneLayout layout(inst);
  auto pop = initialize_population(inst, config);
  if (trace) {
    write_trace_header(*trace);
    write_trace_row(*trace, population_stats(pop, 0));
  }
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    pop = next_generation(inst, config, layout, std::move(pop), gen);
    if (trace) write_trace_row(*trace, population_stats(pop, gen));
  }

  std::vector<std::vector<std::size_t>> fronts;
  detail::rank_population(detail::rank_inputs(pop, config), &fronts);
  std::vector<FrontEntry> entries;
  if (!fronts.empty())
    for (auto i : fronts.front()) {
      const auto& c = pop[i];
      if (c.violation > 0.0) continue;
      entries.push_back(FrontEntry{c.objectives.f1, c.objectives.f2, c.solution,
                                   "ga", static_cast<double>(c.born), false});
    }
  FrontMetadata meta;
  meta.instance_hash = instance_hash(inst);
  meta.config = describe(config, layout.size());
  meta.exact = false;
  meta.relaxed = config.indicators == IndicatorMode::relaxed;
  if (entries.empty()) meta.diagnostic = "no feasible chromosome in the final population";
  return ParetoFront::build(std::move(entries), std::move(meta));
}

}  // namespace clscnd

#endif  // CLSCND_MOGA_HPP
