#ifndef CLSCND_INSTANCE_IO_HPP
#define CLSCND_INSTANCE_IO_HPP

#include <clscnd/errors.hpp>
#include <clscnd/model.hpp>
#include <clscnd/pareto.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace clscnd {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

namespace detail {

inline json to_json(const Tensor3& t) {
  json out = json::array();
  for (std::size_t a = 0; a < t.options(); ++a) {
    json plane = json::array();
    for (std::size_t o = 0; o < t.origins(); ++o) {
      json row = json::array();
      for (std::size_t d = 0; d < t.destinations(); ++d) row.push_back(t(a, o, d));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline double read_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError(key, "expected a number");
  return j.get<double>();
}

inline std::vector<double> read_vector(const json& j, const std::string& key, std::size_t n) {
  if (!j.is_array()) throw ValidationError(key, "expected an array");
  if (j.size() != n)
    throw DimensionError(key + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(n);
  for (const auto& v : j) out.push_back(read_number(v, key));
  return out;
}

inline Matrix read_matrix(const json& j, const std::string& key, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw DimensionError(key + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = read_vector(j[r], key, cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline Tensor3 read_tensor(const json& j, const std::string& key, std::size_t options, std::size_t origins,
                           std::size_t destinations) {
  if (!j.is_array() || j.size() != options)
    throw DimensionError(key + ": expected " + std::to_string(options) + " option planes");
  Tensor3 t(options, origins, destinations);
  for (std::size_t a = 0; a < options; ++a) {
    const auto m = read_matrix(j[a], key, origins, destinations);
    for (std::size_t o = 0; o < origins; ++o)
      for (std::size_t d = 0; d < destinations; ++d) t(a, o, d) = m(o, d);
  }
  return t;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ValidationError(prefix + k, "unknown key");
}

inline const json& require(const json& obj, const std::string& key, const std::string& prefix) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(prefix + key, "missing");
  return *it;
}

struct LinkKeys {
  const char* cost;
  const char* rate;
  const char* distance;
  const char* emission;
};

inline constexpr LinkKeys link_keys[4] = {
    {"ta", "l_a", "da", "gta"}, {"tb", "l_b", "db", "gtb"}, {"tc", "l_c", "dc", "gtc"}, {"td", "l_d", "dd", "gtd"}};

inline json dimensions_json(const Dimensions& d) {
  return json{{"F", d.factories},        {"W", d.warehouses},        {"C", d.customers},
              {"I", d.disassembly_centers}, {"TF", d.factory_options}, {"TW", d.warehouse_options},
              {"TK", d.customer_options}, {"TI", d.disassembly_options}};
}

inline json parameters_json(const NetworkInstance& inst) {
  json p;
  p["q"] = inst.demand;
  const TransportLink* links[] = {&inst.factory_warehouse, &inst.warehouse_customer, &inst.customer_disassembly,
                                  &inst.disassembly_factory};
  for (std::size_t s = 0; s < 4; ++s) {
    p[link_keys[s].cost] = to_json(links[s]->unit_cost);
    p[link_keys[s].rate] = to_json(links[s]->rate);
    p[link_keys[s].distance] = to_json(links[s]->distance);
    p[link_keys[s].emission] = links[s]->emission_factor;
  }
  p["ra"] = inst.factory_fixed_cost;
  p["rb"] = inst.warehouse_fixed_cost;
  p["rd"] = inst.disassembly_fixed_cost;
  p["ma"] = inst.production_cost;
  p["mb"] = inst.handling_cost;
  p["mc"] = inst.collection_cost;
  p["md"] = inst.disassembly_cost;
  p["mr"] = inst.remanufacturing_cost;
  p["pa"] = inst.production_capacity;
  p["pb"] = inst.warehouse_capacity;
  p["pd"] = inst.disassembly_capacity;
  p["pr"] = inst.remanufacturing_capacity;
  p["hd"] = inst.min_collection_share;
  p["hr"] = inst.min_demolition_share;
  p["ga"] = inst.production_emission;
  p["gc"] = inst.assembly_emission;
  p["gb"] = inst.handling_emission;
  p["gd"] = inst.disassembly_emission;
  p["gr"] = inst.remanufacturing_emission;
  p["lambda"] = inst.failure_rate;
  p["t"] = inst.horizon_days;
  return p;
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline bool is_hash(const std::string& s) {
  if (s.size() != 16) return false;
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

}  // namespace detail

inline json instance_to_json(const NetworkInstance& inst) {
  return json{{"schema_version", schema_version},
              {"currency", inst.currency},
              {"provenance", inst.provenance},
              {"include_assembly_emissions", inst.include_assembly_emissions},
              {"dimensions", detail::dimensions_json(inst.dims)},
              {"parameters", detail::parameters_json(inst)}};
}

inline std::string save_instance(const NetworkInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline NetworkInstance instance_from_json(const json& doc) {
  using detail::read_matrix;
  using detail::read_number;
  using detail::read_tensor;
  using detail::read_vector;
  using detail::require;
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  detail::reject_unknown(
      doc, {"schema_version", "currency", "provenance", "include_assembly_emissions", "dimensions", "parameters"}, "");
  const auto& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != schema_version)
    throw ValidationError("schema_version", "unsupported version " + version.dump());

  const auto& dj = require(doc, "dimensions", "");
  if (!dj.is_object()) throw ValidationError("dimensions", "expected an object");
  detail::reject_unknown(dj, {"F", "W", "C", "I", "TF", "TW", "TK", "TI"}, "dimensions.");
  auto count = [&](const char* key) {
    const auto& v = require(dj, key, "dimensions.");
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw ValidationError(std::string("dimensions.") + key, "must be an integer >= 1");
    return static_cast<std::size_t>(v.get<long long>());
  };
  Dimensions d{count("F"), count("W"), count("C"), count("I"), count("TF"), count("TW"), count("TK"), count("TI")};

  auto inst = NetworkInstance::zeros(d);
  if (auto it = doc.find("currency"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("currency", "expected a string");
    inst.currency = it->get<std::string>();
  }
  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("provenance", "expected a string");
    inst.provenance = it->get<std::string>();
  }
  if (auto it = doc.find("include_assembly_emissions"); it != doc.end()) {
    if (!it->is_boolean()) throw ValidationError("include_assembly_emissions", "expected a boolean");
    inst.include_assembly_emissions = it->get<bool>();
  }

  const auto& p = require(doc, "parameters", "");
  if (!p.is_object()) throw ValidationError("parameters", "expected an object");
  detail::reject_unknown(p,
                         {"q",  "ta", "tb", "tc", "td", "l_a", "l_b", "l_c", "l_d", "da", "db", "dc", "dd",
                          "ra", "rb", "rd", "ma", "mb", "mc", "md", "mr",  "pa",  "pb",  "pd",  "pr", "hd",
                          "hr", "ga", "gc", "gb", "gd", "gr", "gta", "gtb", "gtc", "gtd", "lambda", "t"},
                         "parameters.");
  const std::string pre = "parameters.";
  auto vec = [&](const char* key, std::size_t n) { return read_vector(require(p, key, pre), pre + key, n); };

  inst.demand = vec("q", d.customers);
  TransportLink* links[] = {&inst.factory_warehouse, &inst.warehouse_customer, &inst.customer_disassembly,
                            &inst.disassembly_factory};
  const std::size_t shapes[4][3] = {{d.factory_options, d.factories, d.warehouses},
                                    {d.warehouse_options, d.warehouses, d.customers},
                                    {d.customer_options, d.customers, d.disassembly_centers},
                                    {d.disassembly_options, d.disassembly_centers, d.factories}};
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& k = detail::link_keys[s];
    const auto [opts, orig, dest] = shapes[s];
    links[s]->unit_cost = read_tensor(require(p, k.cost, pre), pre + k.cost, opts, orig, dest);
    links[s]->rate = read_tensor(require(p, k.rate, pre), pre + k.rate, opts, orig, dest);
    links[s]->distance = read_matrix(require(p, k.distance, pre), pre + k.distance, orig, dest);
    links[s]->emission_factor = vec(k.emission, opts);
  }
  inst.factory_fixed_cost = vec("ra", d.factories);
  inst.warehouse_fixed_cost = vec("rb", d.warehouses);
  inst.disassembly_fixed_cost = vec("rd", d.disassembly_centers);
  inst.production_cost = vec("ma", d.factories);
  inst.handling_cost = vec("mb", d.warehouses);
  inst.collection_cost = vec("mc", d.customers);
  inst.disassembly_cost = vec("md", d.disassembly_centers);
  inst.remanufacturing_cost = vec("mr", d.factories);
  inst.production_capacity = vec("pa", d.factories);
  inst.warehouse_capacity = vec("pb", d.warehouses);
  inst.disassembly_capacity = vec("pd", d.disassembly_centers);
  inst.remanufacturing_capacity = vec("pr", d.factories);
  inst.min_collection_share = read_number(require(p, "hd", pre), pre + "hd");
  inst.min_demolition_share = read_number(require(p, "hr", pre), pre + "hr");
  inst.production_emission = vec("ga", d.factories);
  if (p.contains("gc")) inst.assembly_emission = vec("gc", d.factories);
  inst.handling_emission = vec("gb", d.warehouses);
  inst.disassembly_emission = vec("gd", d.disassembly_centers);
  inst.remanufacturing_emission = vec("gr", d.factories);
  inst.failure_rate = read_number(require(p, "lambda", pre), pre + "lambda");
  inst.horizon_days = read_number(require(p, "t", pre), pre + "t");

  try {
    inst.validate();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    throw ValidationError(e.key() == "dimensions" ? e.key() : pre + e.key(), what.substr(e.key().size() + 2));
  }
  return inst;
}

inline NetworkInstance load_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance document: ") + e.what());
  }
  return instance_from_json(doc);
}

/// FNV-1a 64 over the compact canonical form of dimensions, parameters and
/// the assembly flag, as 16 lowercase hex digits. Provenance and currency
/// labels do not change the hash.
inline std::string instance_hash(const NetworkInstance& inst) {
  const json canonical{{"dimensions", detail::dimensions_json(inst.dims)},
                       {"include_assembly_emissions", inst.include_assembly_emissions},
                       {"parameters", detail::parameters_json(inst)}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a64(canonical.dump())));
  return buf;
}

// ---------------------------------------------------------------------------
// Solutions and fronts

inline json solution_to_json(const FlowSolution& s) {
  return json{{"xa", s.factory_open},
              {"xb", s.warehouse_open},
              {"xd", s.disassembly_open},
              {"ya", detail::to_json(s.factory_warehouse)},
              {"yb", detail::to_json(s.warehouse_customer)},
              {"yc", detail::to_json(s.customer_disassembly)},
              {"yd", detail::to_json(s.disassembly_factory)}};
}

namespace detail {

inline Tensor3 read_tensor_any(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ValidationError(key, "expected a nested [option][origin][destination] array");
  return read_tensor(j, key, j.size(), j[0].size(), j[0][0].size());
}

inline std::vector<double> read_vector_any(const json& j, const std::string& key) {
  if (!j.is_array()) throw ValidationError(key, "expected an array");
  return read_vector(j, key, j.size());
}

}  // namespace detail

inline FlowSolution solution_from_json(const json& j, const std::string& prefix = "solution.") {
  if (!j.is_object()) throw ValidationError(prefix, "expected an object");
  detail::reject_unknown(j, {"xa", "xb", "xd", "ya", "yb", "yc", "yd"}, prefix);
  FlowSolution s;
  s.factory_open = detail::read_vector_any(detail::require(j, "xa", prefix), prefix + "xa");
  s.warehouse_open = detail::read_vector_any(detail::require(j, "xb", prefix), prefix + "xb");
  s.disassembly_open = detail::read_vector_any(detail::require(j, "xd", prefix), prefix + "xd");
  s.factory_warehouse = detail::read_tensor_any(detail::require(j, "ya", prefix), prefix + "ya");
  s.warehouse_customer = detail::read_tensor_any(detail::require(j, "yb", prefix), prefix + "yb");
  s.customer_disassembly = detail::read_tensor_any(detail::require(j, "yc", prefix), prefix + "yc");
  s.disassembly_factory = detail::read_tensor_any(detail::require(j, "yd", prefix), prefix + "yd");
  return s;
}

inline json front_to_json(const ParetoFront& front) {
  json entries = json::array();
  for (const auto& e : front.entries())
    entries.push_back(json{{"f1", e.f1},
                           {"f2", e.f2},
                           {"method", e.method},
                           {"epsilon_or_gen", e.epsilon_or_gen},
                           {"proven", e.proven},
                           {"solution", solution_to_json(e.solution)}});
  const auto& m = front.metadata;
  return json{{"schema_version", schema_version},
              {"instance_hash", m.instance_hash},
              {"timestamp", m.timestamp},
              {"exact", m.exact},
              {"relaxed", m.relaxed},
              {"diagnostic", m.diagnostic},
              {"config", m.config},
              {"entries", std::move(entries)}};
}

inline std::string save_front(const ParetoFront& front) { return front_to_json(front).dump(2) + "\n"; }

inline ParetoFront front_from_json(const json& doc) {
  using detail::require;
  if (!doc.is_object()) throw ParseError("front document must be a JSON object");
  detail::reject_unknown(
      doc, {"schema_version", "instance_hash", "timestamp", "exact", "relaxed", "diagnostic", "config", "entries"}, "");
  const auto& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != schema_version)
    throw ValidationError("schema_version", "unsupported version " + version.dump());

  FrontMetadata m;
  const auto& hash = require(doc, "instance_hash", "");
  if (!hash.is_string() || !detail::is_hash(hash.get<std::string>()))
    throw ValidationError("instance_hash", "expected 16 lowercase hex digits");
  m.instance_hash = hash.get<std::string>();
  auto text = [&](const char* key) {
    const auto& v = require(doc, key, "");
    if (!v.is_string()) throw ValidationError(key, "expected a string");
    return v.get<std::string>();
  };
  auto flag = [&](const char* key) {
    const auto& v = require(doc, key, "");
    if (!v.is_boolean()) throw ValidationError(key, "expected a boolean");
    return v.get<bool>();
  };
  m.timestamp = text("timestamp");
  m.diagnostic = text("diagnostic");
  m.exact = flag("exact");
  m.relaxed = flag("relaxed");
  const auto& config = require(doc, "config", "");
  if (!config.is_object()) throw ValidationError("config", "expected an object");
  for (const auto& [k, v] : config.items()) {
    if (!v.is_string()) throw ValidationError("config." + k, "expected a string");
    m.config[k] = v.get<std::string>();
  }

  const auto& ej = require(doc, "entries", "");
  if (!ej.is_array()) throw ValidationError("entries", "expected an array");
  std::vector<FrontEntry> entries;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string pre = "entries[" + std::to_string(i) + "].";
    const auto& e = ej[i];
    if (!e.is_object()) throw ValidationError(pre, "expected an object");
    detail::reject_unknown(e, {"f1", "f2", "method", "epsilon_or_gen", "proven", "solution"}, pre);
    FrontEntry fe;
    fe.f1 = detail::read_number(require(e, "f1", pre), pre + "f1");
    fe.f2 = detail::read_number(require(e, "f2", pre), pre + "f2");
    fe.epsilon_or_gen = detail::read_number(require(e, "epsilon_or_gen", pre), pre + "epsilon_or_gen");
    const auto& method = require(e, "method", pre);
    if (!method.is_string()) throw ValidationError(pre + "method", "expected a string");
    fe.method = method.get<std::string>();
    const auto& proven = require(e, "proven", pre);
    if (!proven.is_boolean()) throw ValidationError(pre + "proven", "expected a boolean");
    fe.proven = proven.get<bool>();
    fe.solution = solution_from_json(require(e, "solution", pre), pre + "solution.");
    entries.push_back(std::move(fe));
  }
  return ParetoFront::from_entries(std::move(entries), std::move(m));
}

inline ParetoFront load_front(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("front document: ") + e.what());
  }
  return front_from_json(doc);
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string front_csv(const ParetoFront& front) {
  std::string out = "f1,f2,method,epsilon_or_gen,proven\n";
  for (const auto& e : front.entries())
    out += format_double(e.f1) + "," + format_double(e.f2) + "," + e.method + "," + format_double(e.epsilon_or_gen) +
           "," + (e.proven ? "true" : "false") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace clscnd

#endif  // CLSCND_INSTANCE_IO_HPP
