#include <CLI11.hpp>

#include <iostream>

#include "cli.hpp"

namespace {

void add_common_options(CLI::App* sub, prisma::cli::RunConfig& config) {
  sub->add_option("--input", config.input_path,
                  "Instance file (MatrixMarket .mtx or headered CSV)");
  sub->add_option("--synthetic", config.synthetic,
                  "Synthetic instance spec, e.g. 50x50,rank=2,p=0.05,seed=7");
  sub->add_option("--seed", config.seed,
                  "Seed for synthetic instances (mandatory unless the spec "
                  "carries seed=...)");
  sub->add_option("--lambda", config.lambda, "Regularization weight")
      ->capture_default_str();
  sub->add_option("--schedule", config.schedule,
                  "Smoothing schedule: fixed:<beta>, dynamic:<a> or dynamic:auto")
      ->capture_default_str();
  sub->add_option("--max-iter", config.max_iter, "Iteration cap")
      ->capture_default_str();
  sub->add_option("--rel-tol", config.rel_tol,
                  "Stop when the relative step drops below this")
      ->capture_default_str();
  sub->add_option("--trace-every", config.trace_every,
                  "Objective evaluation / trace cadence")
      ->capture_default_str();
  sub->add_option("--output,-o", config.output_path, "Trace CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "prisma: accelerated proximal solver with iterative smoothing for "
      "composite objectives f + g + h"};
  app.require_subcommand(1);

  prisma::cli::RunConfig config;
  add_common_options(
      app.add_subcommand("matcomp", "Max-norm regularized matrix completion"),
      config);
  add_common_options(
      app.add_subcommand("rpca", "Robust PCA (low rank plus sparse)"), config);
  add_common_options(
      app.add_subcommand("sics", "Sparse inverse covariance selection"), config);
  add_common_options(
      app.add_subcommand("bp", "Basis pursuit (min ||x||_1 s.t. Ax = b)"), config);

  CLI11_PARSE(app, argc, argv);

  config.kind = app.get_subcommands().front()->get_name();
  return prisma::cli::run(config, std::cout, std::cerr);
}
