#ifndef RELAXPART_TOOLS_PARTITION_COMMAND_HPP
#define RELAXPART_TOOLS_PARTITION_COMMAND_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaxpart/relaxpart.hpp"

namespace relaxpart::cli {

struct PartitionArgs {
  std::string input;
  std::size_t k = 2;
  double eps = 0.02;
  double eps_disjoint = 0.05;
  std::string scheme = "clique-scaled";
  std::string init = "spectral";
  std::uint64_t seed = 0;
  std::size_t max_iters = 10000;
  std::string out_partition;  // default: <input>.part.<k>
  std::string out_metrics;    // default: stdout
  std::string trace;
  std::string out_kernel;
  bool oracle = false;
  bool verbose = false;
};

enum ExitCode : int { kOk = 0, kInputError = 1, kInfeasible = 2 };

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

/// parse -> expand -> solve -> round -> metrics. Returns the process exit code.
inline int run_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err) {
  if (args.k < 2) {
    err << "error: --k must be at least 2\n";
    return kInputError;
  }
  if (args.eps < 0 || args.eps_disjoint < 0) {
    err << "error: tolerances must be nonnegative\n";
    return kInputError;
  }
  Hypergraph h;
  try {
    HmetisReport report;
    h = read_hmetis_file(args.input, &report);
    if (args.verbose)
      err << "read " << h.num_vertices() << " vertices, " << h.num_hyperedges() << " hyperedges ("
          << report.dropped_hyperedges << " dropped, " << report.duplicate_pins << " duplicate pins)\n";
    else if (report.dropped_hyperedges > 0)
      err << "warning: dropped " << report.dropped_hyperedges << " hyperedges with fewer than 2 pins\n";
  } catch (const std::exception& e) {
    err << "error: " << args.input << ": " << e.what() << "\n";
    return kInputError;
  }
  if (h.total_vertex_weight() < static_cast<double>(args.k)) {
    err << "error: total vertex weight is below k\n";
    return kInputError;
  }

  PipelineOptions options;
  options.eps = args.eps;
  options.eps_disjoint = args.eps_disjoint;
  options.scheme = args.scheme == "clique-uniform" ? ExpansionScheme::CliqueUniform : ExpansionScheme::CliqueScaled;
  options.solver.init = args.init == "random" ? InitKind::Random : InitKind::Spectral;
  options.solver.seed = args.seed;
  options.solver.max_iterations = args.max_iters;
  options.solver.threads = threads_from_environment();
  options.parallel_branches = options.solver.threads > 1;

  KWayResult result;
  try {
    result = recursive_bisect(h, args.k, options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const CutMetrics metrics = cut_metrics(h, result.partition);
  if (args.verbose)
    err << "solve: " << result.bisections << " bisections, root converged=" << result.root.converged
        << " after " << result.root.iterations << " iterations"
        << (result.root.spectral_fell_back ? " (spectral init fell back to random)" : "") << "\n";

  nlohmann::ordered_json j;
  j["cut_net"] = metrics.cut_net;
  j["connectivity_minus_one"] = metrics.connectivity_minus_one;
  j["imbalance"] = metrics.imbalance;
  j["objective_value"] = result.root.objective_value;
  j["stationarity_norm"] = result.root.stationarity_norm;
  j["converged"] = result.root.converged;
  j["iterations"] = result.root.iterations;
  j["wall_time_ms"] = result.solve_ms;
  j["k"] = args.k;
  j["feasible"] = result.feasible;
  if (args.oracle) {
    if (args.k != 2 || h.num_vertices() > 24) {
      err << "note: oracle needs k = 2 and at most 24 vertices\n";
      j["oracle_cut"] = nullptr;
    } else {
      try {
        const auto exact = brute_force_bisect(h, args.eps);
        j["oracle_cut"] = exact.cut;
        j["oracle_gap"] = metrics.cut_net - exact.cut;
      } catch (const std::domain_error& e) {
        err << "note: oracle: " << e.what() << "\n";
        j["oracle_cut"] = nullptr;
      }
    }
  }

  try {
    const std::string partition_path =
        args.out_partition.empty() ? args.input + ".part." + std::to_string(args.k) : args.out_partition;
    write_file(partition_path, write_partition(result.partition));
    const std::string metrics_text = j.dump(2) + "\n";
    if (args.out_metrics.empty())
      out << metrics_text;
    else
      write_file(args.out_metrics, metrics_text);
    if (!args.trace.empty()) write_file(args.trace, trace_csv(result.root.trace));
    if (!args.out_kernel.empty()) write_file(args.out_kernel, write_matrix_market(expand(h, options.scheme)));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!result.feasible) {
    err << "warning: partition violates the balance constraint (imbalance " << metrics.imbalance << ")\n";
    return kInfeasible;
  }
  return kOk;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hypergraph partitioning by continuous relaxation"};
  app.require_subcommand(1);
  PartitionArgs args;
  auto* partition = app.add_subcommand("partition", "Partition an hMetis hypergraph into k blocks");
  partition->add_option("--input", args.input, "hMetis hypergraph file")->required();
  partition->add_option("--k", args.k, "number of blocks (>= 2)");
  partition->add_option("--eps", args.eps, "allowed imbalance");
  partition->add_option("--eps-disjoint", args.eps_disjoint, "overlap tolerance of the relaxation");
  partition->add_option("--scheme", args.scheme, "hyperedge expansion")
      ->check(CLI::IsMember({"clique-uniform", "clique-scaled"}));
  partition->add_option("--init", args.init, "initial point")->check(CLI::IsMember({"spectral", "random"}));
  partition->add_option("--seed", args.seed, "random seed");
  partition->add_option("--max-iters", args.max_iters, "iteration cap of the solver");
  partition->add_option("--out-partition", args.out_partition, "partition file (default <input>.part.<k>)");
  partition->add_option("--out-metrics", args.out_metrics, "metrics JSON (default stdout)");
  partition->add_option("--trace", args.trace, "solver trace CSV");
  partition->add_option("--out-kernel", args.out_kernel, "kernel matrix, MatrixMarket");
  partition->add_flag("--oracle", args.oracle, "compare against exhaustive search (n <= 24)");
  partition->add_flag("--verbose", args.verbose, "log progress to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }
  return run_partition(args, out, err);
}

}  // namespace relaxpart::cli

#endif  // RELAXPART_TOOLS_PARTITION_COMMAND_HPP
