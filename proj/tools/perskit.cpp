#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "persist/enumerate.hpp"
#include "persist/json_io.hpp"
#include "persist/persistence.hpp"
#include "persist/sequencer.hpp"

namespace {

using namespace persist;

std::string read_input(const std::string& file) {
  if (file.empty() || file == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(file);
  if (!in)
    throw PreconditionError("cannot read file \"" + file + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_json(const nlohmann::ordered_json& j) {
  std::cout << j.dump() << "\n";
}

int run_check(const std::string& file, bool verbose) {
  const DirectedGraph g = parse_graph_text(read_input(file));
  const PersistenceReport report = check_min_persistent(g);
  print_json(report_to_json(report));
  if (verbose) {
    if (report.is_minimally_persistent)
      std::cerr << "minimally persistent: " << g.vertex_count()
                << " vertices, " << g.edge_count() << " edges\n";
    else if (report.violation)
      std::cerr << "not minimally persistent: " << report.violation->reason
                << "\n";
    else
      std::cerr << "not minimally persistent: rank " << report.rigidity.rank
                << " of " << 2 * g.vertex_count() - 3 << "\n";
  }
  return report.is_minimally_persistent ? 0 : 1;
}

int run_decompose(const std::string& file, const std::string& mode,
                  bool verbose) {
  const DirectedGraph g = parse_graph_text(read_input(file));
  const Plan plan = mode == "T" ? decompose_T(g) : decompose_A(g);
  print_json(plan_to_json(plan));
  if (verbose)
    std::cerr << "decomposed " << g.vertex_count() << " vertices in "
              << plan.steps.size() << " steps (mode " << mode << ")\n";
  return 0;
}

int run_construct(const std::string& file, bool verbose) {
  const DirectedGraph g = parse_graph_text(read_input(file));
  const Plan plan = construct_from_seed(g);
  print_json(plan_to_json(plan));
  if (verbose)
    std::cerr << "construction plan with " << plan.steps.size()
              << " steps from seed " << to_string(plan.initial) << "\n";
  return 0;
}

int run_transform(const std::string& fileA, const std::string& fileB,
                  const std::string& mode, bool verbose) {
  const DirectedGraph a = parse_graph_text(read_input(fileA));
  const DirectedGraph b = parse_graph_text(read_input(fileB));
  const Plan plan = mode == "same-underlying"
                        ? transform_same_underlying(a, b)
                        : transform_general(a, b, OpSet::A);
  print_json(plan_to_json(plan));
  if (verbose)
    std::cerr << "transformation plan with " << plan.steps.size()
              << " steps (mode " << mode << ")\n";
  return 0;
}

int run_enumerate(int n, bool verbose) {
  const std::vector<DirectedGraph> corpus = enumerate_min_persistent(n);
  int rigid = static_cast<int>(enumerate_min_rigid(n).size());
  int stuck = 0;
  for (const DirectedGraph& g : corpus)
    if (is_s_inverse_stuck(g)) ++stuck;
  nlohmann::ordered_json header;
  header["n"] = n;
  header["count"] = static_cast<int>(corpus.size());
  header["minRigidCount"] = rigid;
  header["stuckCount"] = stuck;
  header["generator"] = "perskit-enumerate/1";
  std::cout << header.dump() << "\n";
  for (const DirectedGraph& g : corpus) std::cout << graph_line(g) << "\n";
  if (verbose)
    std::cerr << "n=" << n << ": " << corpus.size()
              << " minimally persistent graphs over " << rigid
              << " minimally rigid graphs, " << stuck << " stuck\n";
  return 0;
}

int run_random(int n, std::uint64_t seed, bool verbose) {
  const DirectedGraph g = random_min_persistent(n, seed);
  std::cout << graph_line(g) << "\n";
  if (verbose)
    std::cerr << "random minimally persistent graph: " << to_string(g)
              << "\n";
  return 0;
}

int run_replay(const std::string& file, bool verbose) {
  const Plan plan = plan_from_json(parse_json_text(read_input(file)));
  const ReplayResult result = replay(plan);
  print_json(graph_to_json(result.final));
  if (!result.ok) {
    std::cerr << "replay failed";
    if (result.failed_step >= 0)
      std::cerr << " at step " << result.failed_step;
    std::cerr << ": " << result.reason << "\n";
    return 1;
  }
  if (verbose)
    std::cerr << "replayed " << plan.steps.size()
              << " steps; final graph matches\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for minimally persistent graphs: checking, "
               "decomposition, transformation, enumeration"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "print a human summary on stderr");

  std::string checkFile;
  auto* check = app.add_subcommand(
      "check", "decide minimal persistence and print the report");
  check->add_option("file", checkFile,
                    "graph file, JSON or edge list (stdin when omitted)");

  std::string decomposeFile, decomposeMode = "A";
  auto* decompose = app.add_subcommand(
      "decompose", "peel a graph down to the single-edge seed");
  decompose->add_option("file", decomposeFile,
                        "graph file (stdin when omitted)");
  decompose->add_option("--mode", decomposeMode, "operation set: A or T")
      ->check(CLI::IsMember({"A", "T"}));

  std::string constructFile;
  auto* construct = app.add_subcommand(
      "construct", "emit a construction plan from the seed to the graph");
  construct->add_option("file", constructFile,
                        "graph file (stdin when omitted)");

  std::string transformFrom, transformTo, transformMode = "general";
  auto* transform = app.add_subcommand(
      "transform", "plan a transformation between two graphs");
  transform->add_option("from", transformFrom, "source graph file")
      ->required();
  transform->add_option("to", transformTo, "target graph file")->required();
  transform
      ->add_option("--mode", transformMode,
                   "general or same-underlying")
      ->check(CLI::IsMember({"general", "same-underlying"}));

  int enumerateN = 0;
  auto* enumerate = app.add_subcommand(
      "enumerate", "stream the labeled corpus for a vertex count");
  enumerate->add_option("n", enumerateN, "number of vertices (2..6)")
      ->required();

  int randomN = 0;
  std::uint64_t randomSeed = 0;
  auto* random = app.add_subcommand(
      "random", "emit one pseudo-random minimally persistent graph");
  random->add_option("n", randomN, "number of vertices")->required();
  random->add_option("seed", randomSeed, "generator seed")->required();

  std::string replayFile;
  auto* replayCmd = app.add_subcommand(
      "replay", "re-execute a plan and verify every claim it makes");
  replayCmd->add_option("planfile", replayFile, "plan JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(checkFile, verbose);
    if (decompose->parsed())
      return run_decompose(decomposeFile, decomposeMode, verbose);
    if (construct->parsed()) return run_construct(constructFile, verbose);
    if (transform->parsed())
      return run_transform(transformFrom, transformTo, transformMode,
                           verbose);
    if (enumerate->parsed()) return run_enumerate(enumerateN, verbose);
    if (random->parsed()) return run_random(randomN, randomSeed, verbose);
    if (replayCmd->parsed()) return run_replay(replayFile, verbose);
  } catch (const persist::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
