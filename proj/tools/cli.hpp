#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace prisma::cli {

/// One benchmark run: problem kind, exactly one instance source (file or
/// synthetic spec), regularization, schedule, stopping, and output.
///
/// Synthetic specs by kind (seed may come from the spec or --seed):
///   matcomp  <m>x<n>,rank=<r>,q=<observe fraction>,seed=<s>
///   rpca     <n1>x<n2>,rank=<r>,p=<corruption fraction>,seed=<s>
///   sics     n=<n>,density=<d>,seed=<s>
///   bp       m=<m>,d=<d>,k=<sparsity>,seed=<s>
struct RunConfig {
  std::string kind;        // matcomp | rpca | sics | bp
  std::string input_path;
  std::string synthetic;
  std::optional<std::uint64_t> seed;
  double lambda = 1.0;
  std::string schedule = "dynamic:auto";  // fixed:<beta> | dynamic:<a> | dynamic:auto
  int max_iter = 1000;
  double rel_tol = 1e-5;
  int trace_every = 1;
  std::string output_path;  // trace CSV; empty writes no file
};

/// Builds the instance, runs the solver, writes the trace (when requested)
/// and a one-line summary to `out`. Returns the process exit status:
/// 0 on converged or iteration-cap, 1 on any error (reported on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace prisma::cli
