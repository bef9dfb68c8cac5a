#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "prisma/io.hpp"
#include "prisma/problems.hpp"
#include "prisma/solver.hpp"
#include "prisma/types.hpp"

namespace prisma::cli {

namespace {

struct SynthSpec {
  std::optional<Index> shape_rows;
  std::optional<Index> shape_cols;
  std::map<std::string, std::string> fields;
};

template <typename Parse>
auto parse_number(const std::string& token, Parse parse)
    -> decltype(parse(token)) {
  try {
    return parse(token);
  } catch (const std::exception&) {
    throw InvalidInputError("synthetic spec: expected a number, got '" + token +
                            "'");
  }
}

SynthSpec parse_synth_spec(const std::string& spec) {
  SynthSpec out;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      const auto x = token.find('x');
      if (x == std::string::npos || out.shape_rows)
        throw InvalidInputError("synthetic spec: unrecognized token '" + token + "'");
      out.shape_rows = parse_number(
          token.substr(0, x), [](const std::string& s) { return std::stol(s); });
      out.shape_cols = parse_number(
          token.substr(x + 1), [](const std::string& s) { return std::stol(s); });
    } else {
      out.fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  return out;
}

const std::string& field(const SynthSpec& spec, const std::string& key) {
  const auto it = spec.fields.find(key);
  if (it == spec.fields.end())
    throw InvalidInputError("synthetic spec: missing field '" + key + "'");
  return it->second;
}

double field_double(const SynthSpec& spec, const std::string& key) {
  return parse_number(field(spec, key),
                      [](const std::string& s) { return std::stod(s); });
}

Index field_index(const SynthSpec& spec, const std::string& key) {
  return parse_number(field(spec, key),
                      [](const std::string& s) { return std::stol(s); });
}

std::uint64_t resolve_seed(const SynthSpec& spec, const RunConfig& config) {
  const auto it = spec.fields.find("seed");
  if (it != spec.fields.end())
    return parse_number(it->second,
                        [](const std::string& s) { return std::stoull(s); });
  if (config.seed) return *config.seed;
  throw InvalidInputError("--seed is mandatory for synthetic instances");
}

struct Assembled {
  CompositeProblem problem;
  double default_a = 0.0;
  std::optional<Vector> ground_truth;  // enables recovery reporting
};

Assembled assemble(const RunConfig& config) {
  const bool from_file = !config.input_path.empty();
  const bool from_synth = !config.synthetic.empty();
  if (from_file == from_synth)
    throw InvalidInputError("exactly one of --input and --synthetic is required");

  Assembled out;
  if (config.kind == "matcomp") {
    problems::ObservedEntries omega;
    if (from_file) {
      omega = io::load_observed(config.input_path);
    } else {
      const auto spec = parse_synth_spec(config.synthetic);
      if (!spec.shape_rows)
        throw InvalidInputError("matcomp synthetic spec needs a leading <m>x<n>");
      omega = problems::synth_completion(*spec.shape_rows, *spec.shape_cols,
                                         field_index(spec, "rank"),
                                         field_double(spec, "q"),
                                         resolve_seed(spec, config))
                  .omega;
    }
    auto built = problems::make_maxnorm_completion(omega, config.lambda);
    out.problem = std::move(built.problem);
    out.default_a = built.default_a;
  } else if (config.kind == "rpca") {
    Matrix m;
    if (from_file) {
      m = io::load_matrix(config.input_path);
    } else {
      const auto spec = parse_synth_spec(config.synthetic);
      if (!spec.shape_rows)
        throw InvalidInputError("rpca synthetic spec needs a leading <n1>x<n2>");
      m = problems::synth_lowrank_sparse(*spec.shape_rows, *spec.shape_cols,
                                         field_index(spec, "rank"),
                                         field_double(spec, "p"),
                                         resolve_seed(spec, config))
              .m;
    }
    auto built = problems::make_rpca(m, config.lambda);
    out.problem = std::move(built.problem);
    out.default_a = built.default_a;
  } else if (config.kind == "sics") {
    Matrix sigma;
    if (from_file) {
      sigma = io::load_matrix(config.input_path);
    } else {
      const auto spec = parse_synth_spec(config.synthetic);
      sigma = problems::synth_sparse_precision(field_index(spec, "n"),
                                               field_double(spec, "density"),
                                               resolve_seed(spec, config));
    }
    auto built = problems::make_sics(sigma, config.lambda);
    out.problem = std::move(built.problem);
    out.default_a = built.default_a;
  } else if (config.kind == "bp") {
    Matrix a;
    Vector b;
    std::optional<Vector> truth;
    if (from_file) {
      // Augmented [A b]: the last column is the right-hand side.
      const Matrix augmented = io::load_matrix(config.input_path);
      if (augmented.cols() < 2)
        throw InvalidInputError("bp input must be the augmented matrix [A b]");
      a = augmented.leftCols(augmented.cols() - 1);
      b = augmented.rightCols(1);
    } else {
      const auto spec = parse_synth_spec(config.synthetic);
      auto inst = problems::synth_basis_pursuit(field_index(spec, "m"),
                                                field_index(spec, "d"),
                                                field_index(spec, "k"),
                                                resolve_seed(spec, config));
      a = std::move(inst.a);
      b = std::move(inst.b);
      truth = std::move(inst.x_true);
    }
    auto built = problems::make_basis_pursuit(a, b);
    out.problem = std::move(built.problem);
    out.default_a = built.default_a;
    out.ground_truth = std::move(truth);
  } else {
    throw InvalidInputError("unknown problem kind '" + config.kind + "'");
  }
  return out;
}

BetaSchedule parse_schedule(const std::string& spec, double default_a,
                            std::optional<double>& auto_a) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string tail = spec.substr(colon + 1);
    const auto value = [&tail] {
      return parse_number(tail, [](const std::string& s) { return std::stod(s); });
    };
    if (head == "fixed") return BetaSchedule::fixed(value());
    if (head == "dynamic") {
      if (tail == "auto") {
        auto_a = default_a;
        return BetaSchedule::dynamic(default_a);
      }
      return BetaSchedule::dynamic(value());
    }
  }
  throw InvalidInputError("schedule must be fixed:<beta>, dynamic:<a> or dynamic:auto, got '" +
                          spec + "'");
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Assembled assembled = assemble(config);
    std::optional<double> auto_a;
    const BetaSchedule schedule =
        parse_schedule(config.schedule, assembled.default_a, auto_a);

    SolveOptions opts;
    opts.max_iter = config.max_iter;
    opts.rel_tol = config.rel_tol;
    opts.trace_every = config.trace_every;

    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = solve(assembled.problem, schedule, opts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    if (!config.output_path.empty())
      io::write_trace_csv(config.output_path, result.trace);

    out << "kind=" << config.kind << " iters=" << result.iterations
        << " F_final=" << format_value(result.final_objective)
        << " F_best=" << format_value(result.best_objective)
        << " stop=" << to_string(result.reason) << " time_s=" << format_value(wall);
    if (auto_a) out << " a=" << format_value(*auto_a);
    if (assembled.ground_truth) {
      const double truth_norm = assembled.ground_truth->norm();
      const double recovery = (result.best_x - *assembled.ground_truth).norm() /
                              (truth_norm > 0.0 ? truth_norm : 1.0);
      out << " recovery=" << format_value(recovery);
    }
    out << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace prisma::cli
