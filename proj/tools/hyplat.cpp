// Generating systems for automorphism groups of integral hyperbolic lattices.
//
//   hyplat aut <matrix-file>    traversal of the perfect-point graph
//   hyplat graph <edge-file>    same pipeline on a graph lattice
//   hyplat batch                random forms through both pipelines, CSV
//
// Matrix files hold "n" followed by n^2 integers, or a bracketed array of
// rows; "-" reads standard input. Edge files hold the vertex count followed
// by "i j" pairs. Exit codes: 0 done, 1 verification failed, 2 bad input,
// 3 budget exceeded.

#include "hyplat/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"automorphism groups of integral hyperbolic lattices"};
  app.require_subcommand(1);

  hyplat::JobSpec job;
  std::string input;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--mode", job.mode, "direct, watson, or auto")
        ->check(CLI::IsMember({"direct", "watson", "auto"}))
        ->capture_default_str();
    cmd->add_option("--json", job.json_path, "write the full report here");
    cmd->add_option("--dot", job.dot_path, "write the residue graph here");
    cmd->add_flag("--verify", job.verify_flag, "check the certificate after the run");
    cmd->add_option("--orbit-budget", job.orbit_budget, "orbit size cap")->capture_default_str();
    cmd->add_flag("--no-timings", job.no_timings, "omit timings for reproducible output");
  };

  CLI::App* aut = app.add_subcommand("aut", "compute the group of a symmetric matrix");
  aut->add_option("matrix-file", input, "matrix file, or - for stdin")->required();
  add_common(aut);

  CLI::App* graph = app.add_subcommand("graph", "compute the group of a graph lattice");
  graph->add_option("edge-file", input, "edge list file, or - for stdin")->required();
  add_common(graph);

  long count = 10, bound = 10;
  int dim = 3;
  uint64_t seed = 1;
  bool batch_no_timings = false;
  CLI::App* batch = app.add_subcommand("batch", "random forms through both pipelines");
  batch->add_option("--count", count, "number of forms")->capture_default_str();
  batch->add_option("--dim", dim, "matrix size")->check(CLI::Range(2, 16))->capture_default_str();
  batch->add_option("--bound", bound, "entry bound")->check(CLI::PositiveNumber)->capture_default_str();
  batch->add_option("--seed", seed, "generator seed")->capture_default_str();
  batch->add_flag("--no-timings", batch_no_timings, "omit timings for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (batch->parsed()) return hyplat::batch(count, dim, bound, seed, batch_no_timings, std::cout);
  if (aut->parsed()) job.matrix_file = input;
  if (graph->parsed()) job.graph_file = input;
  return hyplat::run(job, std::cout, std::cerr);
}
