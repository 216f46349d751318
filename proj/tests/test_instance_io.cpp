#include <clscnd/bundled.hpp>
#include <clscnd/eps_constraint.hpp>
#include <clscnd/generator.hpp>
#include <clscnd/instance_io.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace clscnd;
using clscnd::testing::unit_instance;
using clscnd::testing::unit_solution;

namespace {

std::string data_file(const std::string& name) { return std::string(CLSCND_DATA_DIR) + "/" + name; }

std::string error_key(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "<no error>";
}

json unit_document() { return instance_to_json(unit_instance()); }

GeneratorSpec small_spec(std::uint64_t seed) {
  GeneratorSpec s;
  s.seed = seed;
  s.dims = {1 + seed % 2, 1 + (seed / 2) % 2, 1 + (seed / 4) % 2, 1 + (seed / 8) % 2,
            1 + seed % 3, 1, 1 + (seed / 3) % 2, 1};
  return s;
}

ParetoFront sample_front() {
  const auto inst = unit_instance();
  FrontMetadata meta;
  meta.instance_hash = instance_hash(inst);
  meta.config = {{"method", "eps"}, {"grid_points", "2"}};
  meta.diagnostic = "note";
  return ParetoFront::build({FrontEntry{348.0, 46.0, unit_solution(inst), "eps", 46.0, true}}, meta);
}

}  // namespace

TEST(LoadInstance, BundledFilesMatchConstructors) {
  const auto a = load_instance(read_text_file(data_file("bundled_case.json")));
  EXPECT_EQ(a, bundled_case());
  EXPECT_EQ(a.dims.factories, 2u);
  EXPECT_EQ(a.dims.warehouses, 2u);
  EXPECT_EQ(a.dims.customers, 2u);
  EXPECT_EQ(a.dims.disassembly_centers, 2u);
  EXPECT_EQ(load_instance(read_text_file(data_file("bundled_tradeoff.json"))), bundled_tradeoff_case());
}

TEST(LoadInstance, RoundTripUnit) {
  const auto inst = unit_instance();
  const auto text = save_instance(inst);
  EXPECT_EQ(load_instance(text), inst);
  EXPECT_EQ(save_instance(load_instance(text)), text);
}

TEST(LoadInstance, ShareAboveOneNamesHd) {
  auto doc = unit_document();
  doc["parameters"]["hd"] = 1.3;
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "parameters.hd");
}

TEST(LoadInstance, NegativeCapacityNamesPa) {
  auto doc = unit_document();
  doc["parameters"]["pa"] = {-1.0};
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "parameters.pa");
}

TEST(LoadInstance, UnknownKeysRejected) {
  auto doc = unit_document();
  doc["parameters"]["zz"] = 1.0;
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "parameters.zz");
  doc = unit_document();
  doc["extra"] = true;
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "extra");
}

TEST(LoadInstance, MissingKeyNamed) {
  auto doc = unit_document();
  doc["parameters"].erase("lambda");
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "parameters.lambda");
}

TEST(LoadInstance, WrongShapeIsDimensionError) {
  auto doc = unit_document();
  doc["parameters"]["q"] = {1.0, 2.0};
  EXPECT_THROW(instance_from_json(doc), DimensionError);
}

TEST(LoadInstance, SchemaVersionChecked) {
  auto doc = unit_document();
  doc["schema_version"] = 99;
  EXPECT_EQ(error_key([&] { instance_from_json(doc); }), "schema_version");
}

TEST(LoadInstance, AssemblyFactorsOptional) {
  auto doc = unit_document();
  doc["parameters"].erase("gc");
  const auto inst = instance_from_json(doc);
  EXPECT_EQ(inst.assembly_emission, std::vector<double>{0.0});
}

TEST(LoadInstance, MalformedTextIsParseError) {
  EXPECT_THROW(load_instance("{ not json"), ParseError);
  EXPECT_THROW(load_instance("[1, 2]"), ParseError);
}

TEST(LoadInstance, MissingFileIsIoError) {
  EXPECT_THROW(read_text_file(data_file("no_such_file.json")), IoError);
}

TEST(InstanceHash, StableAndLabelIndependent) {
  auto a = unit_instance();
  auto b = a;
  b.provenance = "something else";
  b.currency = "EUR";
  EXPECT_EQ(instance_hash(a), instance_hash(b));
  EXPECT_EQ(instance_hash(a).size(), 16u);
  b.demand = {11.0};
  EXPECT_NE(instance_hash(a), instance_hash(b));
  b = a;
  b.include_assembly_emissions = true;
  EXPECT_NE(instance_hash(a), instance_hash(b));
}

TEST(FrontIo, RoundTrip) {
  const auto f = sample_front();
  const auto text = save_front(f);
  const auto g = load_front(text);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].f1, 348.0);
  EXPECT_EQ(g[0].solution, f[0].solution);
  EXPECT_EQ(g.metadata.config, f.metadata.config);
  EXPECT_EQ(g.metadata.diagnostic, "note");
  EXPECT_EQ(save_front(g), text);
}

TEST(FrontIo, EmptyFront) {
  FrontMetadata meta;
  meta.instance_hash = instance_hash(unit_instance());
  const auto text = save_front(ParetoFront::build({}, meta));
  const auto g = load_front(text);
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.metadata.instance_hash, meta.instance_hash);
}

TEST(FrontIo, CorruptedHashNamed) {
  auto doc = front_to_json(sample_front());
  doc["instance_hash"] = "not-a-hash";
  EXPECT_EQ(error_key([&] { front_from_json(doc); }), "instance_hash");
  doc["instance_hash"] = 12;
  EXPECT_EQ(error_key([&] { front_from_json(doc); }), "instance_hash");
}

TEST(FrontIo, CsvExport) {
  const auto csv = front_csv(sample_front());
  EXPECT_EQ(csv, "f1,f2,method,epsilon_or_gen,proven\n348,46,eps,46,true\n");
}

TEST(FrontIo, SweepResultRoundTrips) {
  EpsConfig cfg;
  cfg.grid_points = 5;
  const auto f = sweep(bundled_case(), cfg);
  const auto g = load_front(save_front(f));
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_EQ(g[k].f1, f[k].f1);
    EXPECT_EQ(g[k].f2, f[k].f2);
    EXPECT_EQ(g[k].solution, f[k].solution);
  }
}

TEST(FileIo, WriteThenRead) {
  const auto path = (std::filesystem::temp_directory_path() / "clscnd_io_test.json").string();
  write_text_file(path, save_instance(unit_instance()));
  EXPECT_EQ(load_instance(read_text_file(path)), unit_instance());
  std::filesystem::remove(path);
}

TEST(Generator, SameSpecSameInstance) {
  EXPECT_EQ(generate(small_spec(3)), generate(small_spec(3)));
  EXPECT_NE(generate(small_spec(3)), generate(small_spec(4)));
}

TEST(Generator, CollapsedRangesGiveUnitInstance) {
  const auto unit = unit_instance();
  GeneratorSpec spec;
  spec.dims = unit.dims;
  for (auto& [key, r] : spec.ranges) r = {1.0, 1.0};
  spec.ranges["q"] = {10, 10};
  for (const char* k : {"ra", "rb", "rd", "pa", "pb", "pd", "pr"}) spec.ranges[k] = {100, 100};
  spec.ranges["hd"] = {0.2, 0.2};
  spec.ranges["hr"] = {0.5, 0.5};
  spec.ranges["lambda"] = {0, 0};
  spec.ranges["t"] = {7, 7};
  auto inst = generate(spec);
  inst.provenance = unit.provenance;
  EXPECT_EQ(inst, unit);
}

TEST(Generator, CapacitiesCoverThroughput) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate(small_spec(seed));
    double q = 0.0;
    for (double v : inst.demand) q += v;
    auto total = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
    EXPECT_GE(total(inst.production_capacity), 1.5 * q * (1 - 1e-12));
    EXPECT_GE(total(inst.warehouse_capacity), 1.5 * q * (1 - 1e-12));
    EXPECT_GE(total(inst.disassembly_capacity), 1.5 * inst.min_collection_share * q * (1 - 1e-12));
    EXPECT_NO_THROW(payoff_table(inst));
  }
}

TEST(Generator, BadSpecsRejected) {
  GeneratorSpec s;
  s.margin = 0.5;
  EXPECT_THROW(generate(s), InvalidParameter);
  s = {};
  s.ranges["hd"] = {0.5, 1.5};
  EXPECT_THROW(generate(s), InvalidParameter);
  s = {};
  s.ranges["pa"] = {5, 1};
  EXPECT_THROW(generate(s), InvalidParameter);
  s = {};
  s.ranges.erase("q");
  EXPECT_THROW(generate(s), InvalidParameter);
}

TEST(RoundTripProperty, GeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto inst = generate(small_spec(seed));
    inst.include_assembly_emissions = seed % 2 == 0;
    const auto text = save_instance(inst);
    const auto back = load_instance(text);
    ASSERT_EQ(back, inst) << "seed " << seed;
    EXPECT_EQ(instance_hash(back), instance_hash(inst));
    EXPECT_EQ(save_instance(back), text);
  }
}

TEST(RoundTripProperty, RandomSolutions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = generate(small_spec(seed));
    auto rng = detail::make_stream({seed, 99});
    auto s = FlowSolution::zeros(inst.dims);
    for (auto* v : {&s.factory_open, &s.warehouse_open, &s.disassembly_open})
      for (auto& x : *v) x = static_cast<double>(detail::uniform_index(rng, 2));
    for (Tensor3* t : {&s.factory_warehouse, &s.warehouse_customer, &s.customer_disassembly, &s.disassembly_factory})
      for (auto& x : t->flat()) x = detail::uniform(rng, 0.0, 1000.0);
    EXPECT_EQ(solution_from_json(solution_to_json(s)), s);
  }
}
