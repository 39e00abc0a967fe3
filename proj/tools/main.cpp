#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

#include "analytic_command.hpp"
#include "hierperc/analytic.hpp"
#include "hierperc/configuration_io.hpp"
#include "hierperc/embedding.hpp"
#include "hierperc/errors.hpp"
#include "hierperc/experiments.hpp"
#include "hierperc/sampler.hpp"
#include "hierperc/version.hpp"
#include "options.hpp"

namespace {

using hierperc::ExperimentReport;
using hierperc::cli::Options;
namespace ex = hierperc::experiments;

constexpr int kParameterExit = 2;
constexpr int kCapacityExit = 3;

hierperc::PercolationParams model(const Options& o) {
  hierperc::PercolationParams p{o.order, o.alpha, o.beta, o.radius, o.gamma, o.seed, 0};
  p.validate();
  return p;
}

ex::RunOptions run_options(const Options& o) {
  ex::RunOptions run;
  run.threads = o.threads;
  run.sampler = o.sampler == "naive" ? hierperc::SamplerKind::naive : hierperc::SamplerKind::skip;
  run.capacity = o.capacity;
  return run;
}

void with_output(const Options& o, const std::function<void(std::ostream&)>& write) {
  if (o.out.empty() || o.out == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw hierperc::ParameterError("cannot open output file '" + o.out + "'");
  write(file);
}

void emit(const Options& o, const ExperimentReport& report) {
  with_output(o, [&](std::ostream& out) {
    if (o.format == "json") {
      hierperc::write_json(out, report);
    } else {
      hierperc::write_csv(out, report);
    }
  });
}

void run_sample(const Options& o) {
  if (o.format != "csv") throw hierperc::ParameterError("sample writes configurations as csv only");
  const auto config = hierperc::sample(model(o), run_options(o).sampler, o.capacity);
  with_output(o, [&](std::ostream& out) { hierperc::write_configuration_csv(out, config); });
}

void run_alpha_c(const Options& o) {
  ex::AlphaCOptions options;
  options.tolerance = o.tolerance;
  options.max_steps = o.max_steps;
  options.run = run_options(o);
  emit(o, ex::estimate_alpha_c(o.order, o.beta, o.k, o.replicates, {o.bracket_low, o.bracket_high}, o.seed, options));
}

void run_renorm(const Options& o) {
  emit(o, ex::recursion_report(hierperc::analytic::iterate_t(o.order, o.block, o.eta, o.alpha, o.beta, o.steps)));
}

void run_kvn(const Options& o) {
  emit(o, ex::stationarity_report(hierperc::embedding::stationarity_check(o.order, o.length, o.trials, o.seed)));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Long-range percolation on the hierarchical lattice"};
  app.set_version_flag("--version", std::string(hierperc::kVersion));
  app.set_config("--config", "", "Flat key = value file mirroring the long flags; flags override it");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  app.add_option("--order,-N", o.order, "Lattice order N")->capture_default_str();
  app.add_option("--alpha", o.alpha, "Edge intensity alpha")->capture_default_str();
  app.add_option("--beta", o.beta, "Decay base beta")->capture_default_str();
  app.add_option("--gamma", o.gamma, "Vertex closure probability")->capture_default_str();
  app.add_option("--radius", o.radius, "Ball radius n for sample")->capture_default_str();
  app.add_option("--replicates", o.replicates, "Replicates per grid point")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--sampler", o.sampler, "Edge sampler")
      ->check(CLI::IsMember({"naive", "skip"}))
      ->capture_default_str();
  app.add_option("--capacity", o.capacity, "Largest ball, in vertices, a sampler may build")->capture_default_str();
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  app.add_option("--k-first", o.k_first, "First radius of a curve")->capture_default_str();
  app.add_option("--k-last", o.k_last, "Last radius of a curve")->capture_default_str();
  app.add_option("--j-first", o.j_first, "First inner radius")->capture_default_str();
  app.add_option("--j-last", o.j_last, "Last inner radius")->capture_default_str();
  app.add_option("--horizon", o.horizon, "Outer radius (analytic: 0 = infinite)")->capture_default_str();
  app.add_option("--k", o.k, "Radius for alpha-c, mixed-compare and edge-prob")->capture_default_str();
  app.add_option("--threshold", o.threshold, "c in P(|C_k(0)| >= c N^k)")->capture_default_str();
  app.add_option("--bracket-low", o.bracket_low, "Lower alpha of the bisection bracket")->capture_default_str();
  app.add_option("--bracket-high", o.bracket_high, "Upper alpha of the bisection bracket")->capture_default_str();
  app.add_option("--tolerance", o.tolerance, "Bisection stops below this bracket width")->capture_default_str();
  app.add_option("--max-steps", o.max_steps, "Bisection evaluation budget")->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "Coupling epsilon")->capture_default_str();
  app.add_option("--sizes", o.sizes, "Cluster-size thresholds s for mixed-compare")->capture_default_str();
  app.add_option("--meta-n", o.meta_n, "Sub-ball radius n for meta-graph")->capture_default_str();
  app.add_option("--meta-k", o.meta_k, "Meta-vertex scale K")->capture_default_str();
  app.add_option("--block", o.block, "Renormalization block K")->capture_default_str();
  app.add_option("--eta", o.eta, "Renormalization eta")->capture_default_str();
  app.add_option("--steps", o.steps, "Renormalization steps")->capture_default_str();
  app.add_option("--length", o.length, "Digit window length L")->capture_default_str();
  app.add_option("--trials", o.trials, "Stationarity trials")->capture_default_str();

  app.add_option("--formula", o.formula, "Formula for the analytic subcommand");
  app.add_option("--j", o.j, "Inner radius j")->capture_default_str();
  app.add_option("--i", o.i, "Scale index i for cond-escape")->capture_default_str();
  app.add_option("--lambda", o.lambda, "Mean degree lambda")->capture_default_str();
  app.add_option("--m", o.m, "Binomial size m")->capture_default_str();
  app.add_option("--p", o.p, "Binomial probability p")->capture_default_str();
  app.add_option("--t", o.t, "Binomial threshold t")->capture_default_str();
  app.add_option("--size", o.size, "Cluster size for cond-escape")->capture_default_str();
  app.add_option("--a", o.a, "a in a / (1 - ab)")->capture_default_str();
  app.add_option("--b", o.b, "b in a / (1 - ab)")->capture_default_str();
  app.add_option("--n", o.n, "Index n for epsilon-n")->capture_default_str();

  std::function<void()> action;
  auto command = [&](const char* name, const char* help, std::function<void()> fn) {
    app.add_subcommand(name, help)->fallthrough()->callback([&action, fn] { action = fn; });
  };
  command("sample", "Sample one configuration on B_radius(0) and write it as csv", [&] { run_sample(o); });
  command("fraction-curve", "Largest and origin cluster fractions for k in [k-first, k-last]", [&] {
    emit(o, ex::fraction_curve(model(o), {o.k_first, o.k_last}, o.replicates, o.threshold, run_options(o)));
  });
  command("survival-curve", "Escape probabilities of B_j(0) and C_j(0) up to the horizon", [&] {
    emit(o, ex::survival_curve(model(o), {o.j_first, o.j_last}, o.horizon, o.replicates, run_options(o)));
  });
  command("alpha-c", "Bracket the critical alpha by bisection", [&] { run_alpha_c(o); });
  command("mean-cluster", "Mean origin cluster size and its growth ratio", [&] {
    emit(o, ex::mean_cluster_size(model(o), {o.k_first, o.k_last}, o.replicates, run_options(o)));
  });
  command("meta-graph", "Meta-vertex graph built from large sub-ball clusters", [&] {
    emit(o, ex::meta_graph_experiment(model(o), o.meta_n, o.meta_k, o.replicates, run_options(o)));
  });
  command("mixed-compare", "Bond model against the coupled mixed site-bond model", [&] {
    emit(o, ex::mixed_comparison(model(o), o.epsilon, o.k, o.replicates, o.sizes, run_options(o)));
  });
  command("renorm", "Renormalization recursions s_n and t_n", [&] { run_renorm(o); });
  command("kvn-check", "Stationarity of the odometer embedding", [&] { run_kvn(o); });
  std::string formulas;
  for (const auto& name : hierperc::cli::formula_names()) formulas += (formulas.empty() ? "" : ", ") + name;
  command("analytic", "Evaluate a closed-form quantity", [&] { emit(o, hierperc::cli::evaluate_formula(o)); });
  app.get_subcommand("analytic")->footer("Formulas: " + formulas);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParameterExit;
  }

  try {
    action();
  } catch (const hierperc::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacityExit;
  } catch (const hierperc::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterExit;
  } catch (const hierperc::DivergenceError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterExit;
  } catch (const std::out_of_range& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterExit;
  } catch (const std::overflow_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameterExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
