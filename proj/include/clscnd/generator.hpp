#ifndef CLSCND_GENERATOR_HPP
#define CLSCND_GENERATOR_HPP

#include <clscnd/detail/random.hpp>
#include <clscnd/errors.hpp>
#include <clscnd/lp.hpp>
#include <clscnd/model.hpp>
#include <clscnd/network_lp.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace clscnd {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parameter keys in draw order; each key draws from its own stream.
inline const std::vector<std::string>& generator_keys() {
  static const std::vector<std::string> keys{
      "q",  "ta", "tb", "tc", "td", "l_a", "l_b", "l_c", "l_d", "da",  "db",  "dc",  "dd",     "ra",
      "rb", "rd", "ma", "mb", "mc", "md",  "mr",  "pa",  "pb",  "pd",  "pr",  "hd",  "hr",     "ga",
      "gc", "gb", "gd", "gr", "gta", "gtb", "gtc", "gtd", "lambda", "t"};
  return keys;
}

inline std::map<std::string, Range> default_ranges() {
  return {{"q", {50, 150}},       {"ta", {1, 20}},        {"tb", {1, 20}},       {"tc", {1, 20}},
          {"td", {1, 20}},        {"l_a", {1.0, 1.5}},    {"l_b", {1.0, 1.5}},   {"l_c", {1.0, 1.5}},
          {"l_d", {1.0, 1.5}},    {"da", {10, 300}},      {"db", {10, 300}},     {"dc", {10, 300}},
          {"dd", {10, 300}},      {"ra", {500, 5000}},    {"rb", {500, 5000}},   {"rd", {500, 5000}},
          {"ma", {20, 60}},       {"mb", {1, 10}},        {"mc", {1, 10}},       {"md", {1, 10}},
          {"mr", {5, 30}},        {"pa", {50, 300}},      {"pb", {50, 300}},     {"pd", {20, 150}},
          {"pr", {20, 150}},      {"hd", {0.1, 0.4}},     {"hr", {0.1, 0.6}},    {"ga", {5, 20}},
          {"gc", {1, 5}},         {"gb", {0.5, 3}},       {"gd", {0.5, 3}},      {"gr", {2, 10}},
          {"gta", {0.01, 0.2}},   {"gtb", {0.01, 0.2}},   {"gtc", {0.01, 0.2}},  {"gtd", {0.01, 0.2}},
          {"lambda", {0.0, 0.05}}, {"t", {7, 7}}};
}

struct GeneratorSpec {
  std::uint64_t seed = 0;
  Dimensions dims;
  std::map<std::string, Range> ranges = default_ranges();
  double margin = 1.5;  // total capacity >= margin * required throughput at every stage

  void validate() const {
    if (!(margin >= 1.0)) throw InvalidParameter("generator: margin must be >= 1");
    const auto& keys = generator_keys();
    for (const auto& [k, r] : ranges) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        throw InvalidParameter("generator: unknown parameter range '" + k + "'");
      if (!(r.lo >= 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi))
        throw InvalidParameter("generator: range for '" + k + "' must satisfy 0 <= lo <= hi");
    }
    for (const auto& k : keys)
      if (!ranges.count(k)) throw InvalidParameter("generator: missing range for '" + k + "'");
    for (const char* k : {"l_a", "l_b", "l_c", "l_d"})
      if (!(ranges.at(k).lo > 0.0)) throw InvalidParameter(std::string("generator: range for '") + k + "' must be > 0");
    for (const char* k : {"hd", "hr"})
      if (ranges.at(k).hi > 1.0) throw InvalidParameter(std::string("generator: range for '") + k + "' must lie in [0, 1]");
  }
};

namespace detail {

/// Scales `caps` up proportionally (never down) until their sum reaches `need`.
inline void ensure_total(std::vector<double>& caps, double need) {
  const double total = std::accumulate(caps.begin(), caps.end(), 0.0);
  if (total >= need) return;
  if (total <= 0.0) {
    for (auto& c : caps) c = need / static_cast<double>(caps.size());
    return;
  }
  const double f = need / total;
  for (auto& c : caps) c *= f;
}

}  // namespace detail

/// Random instance, deterministic per spec. Capacities are scaled so every
/// stage can carry margin x its minimum throughput; one relaxed LP solve then
/// confirms feasibility.
inline NetworkInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  const auto& d = spec.dims;
  auto inst = NetworkInstance::zeros(d);
  inst.validate();

  const auto& keys = generator_keys();
  auto stream = [&](const std::string& key) {
    const auto idx = static_cast<std::uint64_t>(std::find(keys.begin(), keys.end(), key) - keys.begin());
    return detail::make_stream({spec.seed, idx});
  };
  auto fill = [&](const std::string& key, std::span<double> out) {
    auto rng = stream(key);
    const auto r = spec.ranges.at(key);
    for (auto& v : out) v = detail::uniform(rng, r.lo, r.hi);
  };
  auto scalar = [&](const std::string& key) {
    double v = 0.0;
    fill(key, std::span<double>(&v, 1));
    return v;
  };

  fill("q", inst.demand);
  TransportLink* links[] = {&inst.factory_warehouse, &inst.warehouse_customer, &inst.customer_disassembly,
                            &inst.disassembly_factory};
  const char* stage[] = {"a", "b", "c", "d"};
  for (std::size_t s = 0; s < 4; ++s) {
    fill(std::string("t") + stage[s], links[s]->unit_cost.flat());
    fill(std::string("l_") + stage[s], links[s]->rate.flat());
    fill(std::string("d") + stage[s], links[s]->distance.flat());
    fill(std::string("gt") + stage[s], links[s]->emission_factor);
  }
  fill("ra", inst.factory_fixed_cost);
  fill("rb", inst.warehouse_fixed_cost);
  fill("rd", inst.disassembly_fixed_cost);
  fill("ma", inst.production_cost);
  fill("mb", inst.handling_cost);
  fill("mc", inst.collection_cost);
  fill("md", inst.disassembly_cost);
  fill("mr", inst.remanufacturing_cost);
  fill("pa", inst.production_capacity);
  fill("pb", inst.warehouse_capacity);
  fill("pd", inst.disassembly_capacity);
  fill("pr", inst.remanufacturing_capacity);
  inst.min_collection_share = scalar("hd");
  inst.min_demolition_share = scalar("hr");
  fill("ga", inst.production_emission);
  fill("gc", inst.assembly_emission);
  fill("gb", inst.handling_emission);
  fill("gd", inst.disassembly_emission);
  fill("gr", inst.remanufacturing_emission);
  inst.failure_rate = scalar("lambda");
  inst.horizon_days = scalar("t");

  const double demand = std::accumulate(inst.demand.begin(), inst.demand.end(), 0.0);
  const double collected = inst.min_collection_share * demand;
  detail::ensure_total(inst.production_capacity, spec.margin * demand);
  detail::ensure_total(inst.warehouse_capacity, spec.margin * demand);
  detail::ensure_total(inst.disassembly_capacity, spec.margin * collected);
  detail::ensure_total(inst.remanufacturing_capacity, spec.margin * inst.min_demolition_share * collected);

  inst.provenance = "generated: seed " + std::to_string(spec.seed);
  inst.validate();

  const auto probe = solve_lp(build_milp(inst, ObjectiveMode::cost, std::nullopt, IndicatorMode::relaxed).lp);
  if (!probe.optimal())
    throw GenerationError("generated instance (seed " + std::to_string(spec.seed) +
                          ") failed the feasibility probe: " + to_string(probe.status));
  return inst;
}

}  // namespace clscnd

#endif  // CLSCND_GENERATOR_HPP
