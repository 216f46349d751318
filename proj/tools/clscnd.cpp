// clscnd: command-line front end for the closed-loop supply chain design model.
//
// Exit codes: 0 success, 2 input error, 3 infeasible, 4 resource limit,
// 5 verification failure.

#include <clscnd/eps_constraint.hpp>
#include <clscnd/generator.hpp>
#include <clscnd/instance_io.hpp>
#include <clscnd/moga.hpp>
#include <clscnd/oracle.hpp>
#include <clscnd/svg_plot.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace clscnd;

namespace {

enum Exit { ok = 0, input_error = 2, infeasible = 3, resource_limit = 4, verification_failed = 5 };

/// Relative output paths land in $CLSCND_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  if (p.is_absolute()) return path;
  if (const char* dir = std::getenv("CLSCND_OUT_DIR"); dir && *dir) {
    fs::create_directories(dir);
    return (fs::path(dir) / p).string();
  }
  return path;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

/// Relaxed LP over all indicator configurations at once. Feasible iff the
/// all-open network is, since capacities only grow with the indicators.
bool probe_feasible(const NetworkInstance& inst) {
  const auto s = solve_lp(build_milp(inst, ObjectiveMode::cost, std::nullopt, IndicatorMode::relaxed).lp);
  return s.optimal();
}

// ---------------------------------------------------------------------------
// Tables

void print_objectives(const NetworkInstance& inst, double f1, double f2) {
  std::cout << "f1 = " << inst.currency << " " << fmt("%.3f", f1) << "\n";
  std::cout << "f2 = " << fmt("%.3f", f2) << "(kg)\n";
}

/// Decision variables three to a row, as name/value pairs.
void print_variables(const FlowSolution& s) {
  std::vector<std::pair<std::string, std::string>> cells;
  auto indicators = [&](const char* stem, const std::vector<double>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) cells.emplace_back(stem + std::to_string(k + 1), fmt("%.3f", v[k]));
  };
  auto flows = [&](const char* stem, const Tensor3& t) {
    for (std::size_t o = 0; o < t.options(); ++o)
      for (std::size_t a = 0; a < t.origins(); ++a)
        for (std::size_t b = 0; b < t.destinations(); ++b)
          cells.emplace_back(std::string(stem) + "_{" + std::to_string(a + 1) + std::to_string(b + 1) + "}^" +
                                 std::to_string(o + 1),
                             fmt("%.3f", t(o, a, b)) + "(units)");
  };
  indicators("Xa_", s.factory_open);
  indicators("Xb_", s.warehouse_open);
  indicators("Xd_", s.disassembly_open);
  flows("Ya", s.factory_warehouse);
  flows("Yb", s.warehouse_customer);
  flows("Yc", s.customer_disassembly);
  flows("Yd", s.disassembly_factory);

  std::printf("  %-14s %-18s %-14s %-18s %-14s %-18s\n", "Variables", "Values", "Variables", "Values", "Variables",
              "Values");
  for (std::size_t k = 0; k < cells.size(); k += 3) {
    std::printf(" ");
    for (std::size_t j = k; j < std::min(k + 3, cells.size()); ++j)
      std::printf(" %-14s %-18s", cells[j].first.c_str(), cells[j].second.c_str());
    std::printf("\n");
  }
  std::fflush(stdout);
}

void print_front(const NetworkInstance& inst, const ParetoFront& front, bool brief) {
  std::printf("%-6s %20s %20s %14s %s\n", "point", "f1", "f2 (kg)", "eps/gen", "proven");
  for (std::size_t k = 0; k < front.size(); ++k) {
    const auto& e = front[k];
    std::printf("%-6zu %20.3f %20.3f %14.3f %s\n", k + 1, e.f1, e.f2, e.epsilon_or_gen, e.proven ? "yes" : "no");
  }
  std::fflush(stdout);
  if (brief) return;
  for (std::size_t k = 0; k < front.size(); ++k) {
    std::cout << "\nPoint " << k + 1 << " (" << front[k].method << ")\n";
    std::cout.flush();
    print_variables(front[k].solution);
    print_objectives(inst, front[k].f1, front[k].f2);
  }
}

// ---------------------------------------------------------------------------
// Commands

struct CommonOptions {
  std::size_t threads = 0;
};

int cmd_validate(const std::string& path) {
  const auto inst = load_instance(read_text_file(path));
  const auto& d = inst.dims;
  std::cout << "instance      " << path << "\n";
  std::cout << "hash          " << instance_hash(inst) << "\n";
  if (!inst.provenance.empty()) std::cout << "provenance    " << inst.provenance << "\n";
  std::cout << "dimensions    F=" << d.factories << " W=" << d.warehouses << " C=" << d.customers
            << " I=" << d.disassembly_centers << " TF=" << d.factory_options << " TW=" << d.warehouse_options
            << " TK=" << d.customer_options << " TI=" << d.disassembly_options << "\n";
  const double q = total(inst.demand);
  std::cout << "demand        " << fmt("%.3f", q) << " units\n";
  std::cout << "capacity      production " << fmt("%.3f", total(inst.production_capacity)) << ", warehouse "
            << fmt("%.3f", total(inst.warehouse_capacity)) << ", disassembly "
            << fmt("%.3f", total(inst.disassembly_capacity)) << ", remanufacturing "
            << fmt("%.3f", total(inst.remanufacturing_capacity)) << "\n";
  std::cout << "shares        Hd=" << inst.min_collection_share << " Hr=" << inst.min_demolition_share << "\n";
  std::cout << "reliability   e^(-" << inst.failure_rate << "*" << inst.horizon_days
            << ") = " << fmt("%.6f", inst.reliability()) << "\n";
  std::cout << "assembly CO2  " << (inst.include_assembly_emissions ? "included" : "excluded") << "\n";
  if (!probe_feasible(inst)) {
    std::cout << "feasibility   INFEASIBLE (no flow meets demand and minimum shares within capacity)\n";
    return infeasible;
  }
  std::cout << "feasibility   ok\n";
  return ok;
}

struct SolveOptions {
  std::string method;
  std::string instance;
  std::string out;
  std::string trace;
  std::size_t grid = 20;
  std::size_t population = GaConfig{}.population;
  std::size_t generations = GaConfig{}.generations;
  std::uint64_t seed = 1;
  bool relaxed = false;
  bool brief = false;
};

void write_manifest(const std::string& path, const std::string& command, const NetworkInstance& inst,
                    const SolveOptions& o, const ParetoFront& front, double seconds, const std::string& started,
                    std::size_t threads, const json& stats, const json& artifacts) {
  json m{{"command", command},
         {"instance", o.instance},
         {"instance_hash", instance_hash(inst)},
         {"config", front.metadata.config},
         {"seed", o.method == "ga" ? json(o.seed) : json(nullptr)},
         {"threads", detail::resolve_threads(threads)},
         {"started_at", started},
         {"wall_clock_seconds", seconds},
         {"statistics", stats},
         {"artifacts", artifacts}};
  write_text_file(path, m.dump(2) + "\n");
}

int cmd_solve(const SolveOptions& o, const CommonOptions& common) {
  const auto inst = load_instance(read_text_file(o.instance));
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  ParetoFront front;
  json stats;
  int code = ok;

  if (o.method == "eps") {
    EpsConfig cfg;
    cfg.grid_points = o.grid;
    cfg.threads = common.threads;
    cfg.indicators = o.relaxed ? IndicatorMode::relaxed : IndicatorMode::binary;
    try {
      front = sweep(inst, cfg);
    } catch (const ModelInfeasible& e) {
      std::cerr << "infeasible: " << e.what() << "\n";
      return infeasible;
    } catch (const SolverLimit& e) {
      std::cerr << "solver limit: " << e.what() << "\n";
      return resource_limit;
    }
    if (!front.metadata.exact) code = resource_limit;
    stats = {{"grid_points", o.grid}, {"points", front.size()}, {"exact", front.metadata.exact},
             {"diagnostic", front.metadata.diagnostic}};
  } else {
    if (!probe_feasible(inst)) {
      std::cerr << "infeasible: no flow meets demand and minimum shares within capacity\n";
      return infeasible;
    }
    GaConfig cfg;
    cfg.population = o.population;
    cfg.generations = o.generations;
    cfg.seed = o.seed;
    cfg.threads = common.threads;
    cfg.indicators = o.relaxed ? IndicatorMode::relaxed : IndicatorMode::binary;
    cfg.validate();
    std::ofstream trace_file;
    if (!o.trace.empty()) {
      trace_file.open(resolve_out(o.trace), std::ios::binary | std::ios::trunc);
      if (!trace_file) throw IoError("cannot open " + o.trace + " for writing");
    }
    front = evolve(inst, cfg, o.trace.empty() ? nullptr : &trace_file);
    if (front.empty()) code = resource_limit;
    stats = {{"population", o.population}, {"generations", o.generations},
             {"evaluations", o.population * (o.generations + 1)}, {"points", front.size()},
             {"diagnostic", front.metadata.diagnostic}};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << (o.method == "eps" ? "epsilon-constraint" : "genetic algorithm") << " front, " << front.size()
            << " point(s)" << (front.metadata.relaxed ? ", relaxed indicators" : "")
            << (front.metadata.exact ? "" : ", not proven exact") << "\n";
  if (!front.metadata.diagnostic.empty()) std::cout << "note: " << front.metadata.diagnostic << "\n";
  print_front(inst, front, o.brief);
  std::printf("solved in %.3f s\n", seconds);

  if (!o.out.empty()) {
    const auto out = resolve_out(o.out);
    const auto manifest = out + ".manifest.json";
    write_text_file(out, save_front(front));
    json artifacts{{"front", out}, {"manifest", manifest}};
    if (!o.trace.empty()) artifacts["trace"] = resolve_out(o.trace);
    write_manifest(manifest, "solve " + o.method, inst, o, front, seconds, started, common.threads, stats, artifacts);
    std::cout << "wrote " << out << "\n";
  }
  return code;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const std::string& out) {
  const auto a = load_front(read_text_file(a_path));
  const auto b = load_front(read_text_file(b_path));
  const auto m = compare(a, b);
  std::vector<std::pair<std::string, std::string>> rows{
      {"front_a", a_path},
      {"front_b", b_path},
      {"instance_hash", a.metadata.instance_hash},
      {"count_a", std::to_string(m.count_a)},
      {"count_b", std::to_string(m.count_b)},
      {"reference_f1", format_double(m.reference.f1)},
      {"reference_f2", format_double(m.reference.f2)},
      {"hypervolume_a", format_double(m.hypervolume_a)},
      {"hypervolume_b", format_double(m.hypervolume_b)},
      {"hypervolume_ratio", format_double(m.hypervolume_ratio)},
      {"coverage_ab", format_double(m.coverage_ab)},
      {"coverage_ba", format_double(m.coverage_ba)},
      {"a_min_f1", format_double(m.a_min_f1.f1) + ";" + format_double(m.a_min_f1.f2)},
      {"a_min_f2", format_double(m.a_min_f2.f1) + ";" + format_double(m.a_min_f2.f2)},
      {"b_min_f1", format_double(m.b_min_f1.f1) + ";" + format_double(m.b_min_f1.f2)},
      {"b_min_f2", format_double(m.b_min_f2.f1) + ";" + format_double(m.b_min_f2.f2)},
  };
  std::ostringstream report, csv;
  csv << "metric,value\n";
  for (const auto& [k, v] : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %s\n", k.c_str(), v.c_str());
    report << line;
    csv << k << "," << v << "\n";
  }
  std::cout << report.str();
  if (!out.empty()) {
    const auto path = resolve_out(out);
    write_text_file(path, report.str());
    write_text_file(fs::path(path).replace_extension(".csv").string(), csv.str());
    std::cout << "wrote " << path << "\n";
  }
  return ok;
}

Dimensions parse_dims(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long n = -1;
    try {
      n = std::stoll(item, &pos);
    } catch (const std::exception&) {
    }
    if (n < 1 || pos != item.size()) throw InvalidParameter("--dims: '" + item + "' is not a positive integer");
    v.push_back(static_cast<std::size_t>(n));
  }
  if (v.size() != 8) throw InvalidParameter("--dims expects 8 counts: F,W,C,I,TF,TW,TK,TI");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

int cmd_gen(std::uint64_t seed, const std::string& dims, const std::string& out) {
  GeneratorSpec spec;
  spec.seed = seed;
  spec.dims = parse_dims(dims);
  NetworkInstance inst;
  try {
    inst = generate(spec);
  } catch (const GenerationError& e) {
    std::cerr << e.what() << "\n";
    return infeasible;
  }
  const auto text = save_instance(inst);
  if (out.empty()) {
    std::cout << text;
  } else {
    const auto path = resolve_out(out);
    write_text_file(path, text);
    std::cout << "wrote " << path << " (hash " << instance_hash(inst) << ")\n";
  }
  return ok;
}

int cmd_verify(const std::string& path, std::size_t grid, const CommonOptions& common) {
  const auto inst = load_instance(read_text_file(path));
  if (inst.dims.facility_count() > oracle_max_binaries) {
    std::cerr << "verify: F + W + I = " << inst.dims.facility_count() << " exceeds the enumeration bound of "
              << oracle_max_binaries << "\n";
    return input_error;
  }
  const double tol = 1e-6;
  auto same = [&](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
  bool all_ok = true;
  std::printf("%-28s %-14s %22s %22s %s\n", "check", "status", "solve_milp", "oracle", "result");
  auto row = [&](const std::string& name, SolveStatus s1, SolveStatus s2, double v1, double v2) {
    const bool good = s1 == s2 && (s1 != SolveStatus::optimal || same(v1, v2));
    all_ok = all_ok && good;
    std::printf("%-28s %-14s %22.6f %22.6f %s\n", name.c_str(), to_string(s1), v1, v2, good ? "ok" : "MISMATCH");
    if (s1 != s2) std::printf("%-28s %-14s\n", "", to_string(s2));
  };

  EpsConfig cfg;
  cfg.threads = common.threads;
  cfg.grid_points = grid;
  std::optional<PayoffTable> table;
  try {
    table = payoff_table(inst, cfg);
  } catch (const ModelInfeasible&) {
  }

  std::vector<std::pair<std::string, std::pair<ObjectiveMode, std::optional<double>>>> modes{
      {"cost", {ObjectiveMode::cost, std::nullopt}}, {"emissions", {ObjectiveMode::emissions, std::nullopt}}};
  if (table)
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double cap = table->ideal.f2 + s * (table->nadir.f2 - table->ideal.f2);
      modes.push_back({"cost, f2 <= " + fmt("%.3f", cap), {ObjectiveMode::cost_with_emission_cap, cap}});
    }
  for (const auto& [name, m] : modes) {
    const auto milp = solve_milp(build_milp(inst, m.first, m.second).lp);
    const auto oracle = brute_force_milp(inst, m.first, m.second, {}, common.threads);
    row(name, milp.status, oracle.status, milp.objective, oracle.objective);
  }

  if (table) {
    const auto exact = sweep(inst, cfg, *table);
    const auto reference = brute_force_front(inst, grid, cfg);
    const bool sizes = exact.size() == reference.size();
    all_ok = all_ok && sizes;
    std::printf("%-28s %zu vs %zu points %s\n", "sweep front size", exact.size(), reference.size(),
                sizes ? "ok" : "MISMATCH");
    for (std::size_t k = 0; sizes && k < exact.size(); ++k) {
      const bool good = same(exact[k].f1, reference[k].f1) && same(exact[k].f2, reference[k].f2);
      all_ok = all_ok && good;
      std::printf("%-28s (%.6f, %.6f) vs (%.6f, %.6f) %s\n", ("sweep point " + std::to_string(k + 1)).c_str(),
                  exact[k].f1, exact[k].f2, reference[k].f1, reference[k].f2, good ? "ok" : "MISMATCH");
    }
  }
  std::cout << (all_ok ? "verify: all checks match\n" : "verify: MISMATCH\n");
  return all_ok ? ok : verification_failed;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out, const std::string& title,
             const std::string& currency) {
  std::vector<PlotSeries> series;
  for (const auto& path : inputs) {
    const auto front = load_front(read_text_file(path));
    std::string method = front.empty() ? "" : front[0].method;
    if (auto it = front.metadata.config.find("method"); it != front.metadata.config.end()) method = it->second;
    series.push_back({fs::path(path).stem().string() + (method.empty() ? "" : " (" + method + ")"), front.points()});
  }
  PlotOptions opt;
  opt.title = title;
  opt.currency = currency;
  const auto path = resolve_out(out);
  write_text_file(path, render_svg(series, opt));
  write_text_file(fs::path(path).replace_extension(".csv").string(), plot_csv(series));
  std::cout << "wrote " << path << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop supply chain network design: total cost vs CO2 emissions"};
  app.require_subcommand(1);
  CommonOptions common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  std::string instance_path;
  auto* validate = app.add_subcommand("validate", "Check an instance file and probe feasibility");
  validate->add_option("instance", instance_path, "Instance file")->required();

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a Pareto front");
  solve_cmd->add_option("method", solve.method, "eps or ga")->required()->check(CLI::IsMember({"eps", "ga"}));
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--grid", solve.grid, "Epsilon grid points (eps)")->check(CLI::Range(2, 100000));
  solve_cmd->add_option("--pop", solve.population, "Population size (ga)")->check(CLI::Range(2, 1000000));
  solve_cmd->add_option("--gens", solve.generations, "Generations (ga)");
  solve_cmd->add_option("--seed", solve.seed, "Random seed (ga)");
  solve_cmd->add_option("--trace", solve.trace, "Per-generation CSV trace (ga)");
  solve_cmd->add_flag("--relaxed", solve.relaxed, "Relax facility indicators to [0, 1]");
  solve_cmd->add_flag("--brief", solve.brief, "Print only the objective table");
  solve_cmd->add_option("--out", solve.out, "Front file (a manifest is written next to it)");

  std::string front_a, front_b, compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two fronts of the same instance");
  compare_cmd->add_option("front_a", front_a, "Reference front")->required();
  compare_cmd->add_option("front_b", front_b, "Front to assess")->required();
  compare_cmd->add_option("--out", compare_out, "Report file (CSV written alongside)");

  std::uint64_t gen_seed = 0;
  std::string gen_dims = "2,2,2,2,1,1,1,1", gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random feasible instance");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--dims", gen_dims, "F,W,C,I,TF,TW,TK,TI");
  gen->add_option("--out", gen_out, "Instance file (stdout if omitted)");

  std::size_t verify_grid = 5;
  auto* verify = app.add_subcommand("verify", "Cross-check the solver against exhaustive enumeration");
  verify->add_option("instance", instance_path, "Instance file")->required();
  verify->add_option("--grid", verify_grid, "Epsilon grid points for the front check")->check(CLI::Range(2, 1000));

  std::vector<std::string> plot_inputs;
  std::string plot_out, plot_title = "Pareto front", plot_currency = "\xC2\xA3";
  auto* plot = app.add_subcommand("plot", "Draw fronts as an SVG scatter plot");
  plot->add_option("fronts", plot_inputs, "Front files")->required();
  plot->add_option("--out", plot_out, "SVG file (CSV written alongside)")->required();
  plot->add_option("--title", plot_title, "Plot title");
  plot->add_option("--currency", plot_currency, "Currency label for the cost axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*validate) return cmd_validate(instance_path);
    if (*solve_cmd) return cmd_solve(solve, common);
    if (*compare_cmd) return cmd_compare(front_a, front_b, compare_out);
    if (*gen) return cmd_gen(gen_seed, gen_dims, gen_out);
    if (*verify) return cmd_verify(instance_path, verify_grid, common);
    if (*plot) return cmd_plot(plot_inputs, plot_out, plot_title, plot_currency);
  } catch (const ModelInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return infeasible;
  } catch (const SolverLimit& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return resource_limit;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return input_error;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
