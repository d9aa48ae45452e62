#include "sensornet/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sensornet/dot.hpp"
#include "sensornet/error.hpp"
#include "sensornet/generator.hpp"
#include "sensornet/matching.hpp"
#include "sensornet/network.hpp"
#include "sensornet/observability.hpp"
#include "sensornet/scc.hpp"
#include "sensornet/sensing.hpp"
#include "sensornet/verification.hpp"

namespace sensornet {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::validation, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::validation, "cannot write " + path);
  out << text;
}

StructuredMatrix pattern_of(Index m, const std::vector<Arc>& arcs) {
  return StructuredMatrix(m, m, std::vector<Entry>(arcs.begin(), arcs.end()));
}

json design_json(const NetworkDesign& design) {
  json doc{{"method", to_string(design.method)}, {"cost", design.total_cost}};
  if (design.root) doc["root"] = *design.root + 1;
  if (design.tree_cost) doc["tree_cost"] = *design.tree_cost;
  return doc;
}

struct Options {
  std::string in;
  std::string out;
  std::string design;
  std::optional<Index> root;
  bool all_roots = false;
  bool exact = false;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double tolerance = kDefaultRankTolerance;
  Index n = 1;
  Index m = 1;
  double density = 0.3;
  bool undirected = false;
  std::string graph = "system";
};

int cmd_analyze(const Options& opt, std::ostream& out) {
  const auto inst = parse_instance(read_file(opt.in));
  const auto partition = scc_decompose(digraph_from_pattern(inst.system_pattern));
  json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  doc["structurally_full_rank"] = is_structurally_full_rank(inst.system_pattern);
  doc["parent_count"] = partition.parents().size();
  doc["scc"] = json::parse(partition.to_json());
  doc["network_strongly_connected"] = is_strongly_connected(inst.network.topology());
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_design(const Options& opt) {
  const auto inst = parse_instance(read_file(opt.in));
  DesignOptions design_options;
  if (opt.root) {
    design_options.root_mode = RootMode::single_root;
    if (*opt.root < 1 || *opt.root > inst.m) {
      throw Error(ErrorKind::validation, "--root must lie in 1.." + std::to_string(inst.m));
    }
    design_options.root = *opt.root - 1;
  }
  design_options.exact = opt.exact;
  write_file(opt.out, serialize_design(design_pipeline(inst, design_options)));
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto inst = parse_instance(read_file(opt.in));
  const auto design = parse_design(read_file(opt.design), inst.m, inst.n);
  out << verify_design_numeric(inst, design, opt.trials, opt.seed, opt.tolerance).to_json();
  return 0;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
  const auto inst = parse_instance(read_file(opt.in));
  const auto partition = scc_decompose(digraph_from_pattern(inst.system_pattern));
  const auto costs = build_parent_cost_matrix(inst, partition);
  const auto fast = hungarian_solve(costs);
  const auto exact = brute_force_assignment(costs);

  json doc;
  doc["sensing"] = {{"hungarian_cost", fast.total_cost},
                    {"brute_force_cost", exact.total_cost},
                    {"gap", approximation_gap(fast.total_cost, exact.total_cost)}};

  NetworkDesign heuristic, optimum;
  if (inst.network_undirected) {
    heuristic = mst_solve(inst.network);
    optimum = brute_force_spanning_tree(inst.network);
  } else {
    heuristic = msss_best_root(inst.network);
    optimum = brute_force_msss(inst.network);
  }
  doc["network"] = {{"heuristic", design_json(heuristic)},
                    {"exact", design_json(optimum)},
                    {"gap", approximation_gap(heuristic.total_cost, optimum.total_cost)},
                    {"gap_bound", heuristic.gap_bound}};
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_gen(const Options& opt) {
  GeneratorConfig cfg;
  cfg.n = opt.n;
  cfg.m = opt.m;
  cfg.density = opt.density;
  cfg.seed = opt.seed;
  cfg.undirected = opt.undirected;
  write_file(opt.out, serialize_instance(generate_instance(cfg)));
  return 0;
}

int cmd_export_dot(const Options& opt) {
  const auto inst = parse_instance(read_file(opt.in));
  std::string text;
  if (opt.graph == "network") {
    std::vector<std::string> labels;
    for (Index i = 0; i < inst.m; ++i) labels.push_back("y" + std::to_string(i + 1));
    text = export_dot(inst.network, labels);
  } else {
    std::vector<std::string> labels;
    for (Index j = 0; j < inst.n; ++j) labels.push_back("x" + std::to_string(j + 1));
    text = export_dot(digraph_from_pattern(inst.system_pattern), labels);
  }
  write_file(opt.out, text);
  return 0;
}

}  // namespace

DesignResult design_pipeline(const ProblemInstance& instance, const DesignOptions& options) {
  instance.validate();
  if (!is_structurally_full_rank(instance.system_pattern)) {
    throw Error(ErrorKind::precondition, "system pattern is not structurally full rank");
  }
  const auto partition = scc_decompose(digraph_from_pattern(instance.system_pattern));
  const auto assignment = hungarian_solve(build_parent_cost_matrix(instance, partition));

  DesignResult result;
  result.measurement_pattern = recover_measurement_structure(assignment, instance.n);
  result.sensing_cost = assignment.total_cost;

  NetworkDesign network;
  if (instance.network_undirected) {
    network = mst_solve(instance.network);
  } else if (options.exact) {
    network = brute_force_msss(instance.network);
  } else if (options.root_mode == RootMode::single_root) {
    network = msss_2approx(instance.network, options.root);
  } else {
    network = msss_best_root(instance.network);
  }
  result.network_pattern = pattern_of(instance.m, network.selected_arcs);
  result.networking_cost = network.total_cost;
  result.tree_cost = network.tree_cost;
  // A single sensor needs no links, which is trivially optimal.
  result.network_optimality = network.gap_bound == 0.0 || instance.m == 1
                                  ? NetworkOptimality::exact
                                  : NetworkOptimality::two_approx;
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-optimal sensing and networking design for distributed estimation"};
  app.require_subcommand(1);
  Options opt;

  auto* analyze = app.add_subcommand("analyze", "SCC decomposition and structural checks of an instance");
  analyze->add_option("--in", opt.in, "instance JSON")->required();

  auto* design = app.add_subcommand("design", "optimal measurement and network design");
  design->add_option("--in", opt.in, "instance JSON")->required();
  design->add_option("--out", opt.out, "design JSON to write")->required();
  auto* root = design->add_option("--root", opt.root, "single branching root (1-based, directed networks)");
  auto* all_roots = design->add_flag("--all-roots", opt.all_roots, "try every root, keep the cheapest (default)");
  root->excludes(all_roots);
  design->add_flag("--exact", opt.exact, "exact MSSS by enumeration (small directed networks)");

  auto* verify = app.add_subcommand("verify", "numeric (W kron A, D_H) observability trials");
  verify->add_option("--in", opt.in, "instance JSON")->required();
  verify->add_option("--design", opt.design, "design JSON")->required();
  verify->add_option("--trials", opt.trials, "number of random realizations")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "master seed");
  verify->add_option("--tol", opt.tolerance, "relative singular value tolerance")
      ->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "compare solvers against exhaustive search");
  oracle->add_option("--in", opt.in, "instance JSON")->required();

  auto* gen = app.add_subcommand("gen", "generate a random feasible instance");
  gen->add_option("--n", opt.n, "state count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", opt.m, "sensor count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--density", opt.density, "probability of optional edges and costs")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", opt.seed, "master seed");
  gen->add_option("--out", opt.out, "instance JSON to write")->required();
  gen->add_flag("--undirected", opt.undirected, "symmetric candidate network");

  auto* dot = app.add_subcommand("export-dot", "Graphviz export of the state digraph or network");
  dot->add_option("--in", opt.in, "instance JSON")->required();
  dot->add_option("--out", opt.out, "DOT file to write")->required();
  dot->add_option("--graph", opt.graph, "system or network")
      ->check(CLI::IsMember({"system", "network"}));

  std::vector<const char*> argv{"sensornet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return cmd_analyze(opt, out);
    if (*design) return cmd_design(opt);
    if (*verify) return cmd_verify(opt, out);
    if (*oracle) return cmd_oracle(opt, out);
    if (*gen) return cmd_gen(opt);
    if (*dot) return cmd_export_dot(opt);
  } catch (const Error& e) {
    out << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    out << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sensornet
