#pragma once

// Monte Carlo experiments over sampled configurations.
//
// Row r of every report draws its replicates from the master seed through
// row_seed(master, r); replicate i of that row uses (row_seed, i) as the
// (seed, replicate) pair of the sampler. Replicates may run on several
// threads but are aggregated in replicate order, so output is independent of
// the thread count.

#include <cstdint>
#include <optional>
#include <span>

#include "hierperc/analytic.hpp"
#include "hierperc/embedding.hpp"
#include "hierperc/report.hpp"
#include "hierperc/sampler.hpp"

namespace hierperc::experiments {

inline constexpr std::uint64_t kRowStream = std::uint64_t{3} << 32;

std::uint64_t row_seed(std::uint64_t master_seed, std::uint64_t row);

struct RunOptions {
  unsigned threads = 0;  ///< 0 selects std::thread::hardware_concurrency()
  SamplerKind sampler = SamplerKind::skip;
  std::uint64_t capacity = kDefaultCapacity;
};

struct KRange {
  unsigned first = 1;
  unsigned last = 1;
};

/// Columns: k, vertices, largest_fraction(_se), origin_in_largest(_se),
/// origin_fraction(_se), origin_large(_se), replicates. origin_large is
/// P(|C_k(0)| >= threshold * N^k). Uses params.order, alpha, beta, gamma, seed.
ExperimentReport fraction_curve(const PercolationParams& params, KRange k_range, std::uint64_t replicates,
                                double threshold = 0.1, const RunOptions& options = {});

/// All rows come from one set of samples on B_horizon(0). Columns: j,
/// ball_escape(_se), ball_escape_analytic, cluster_escape(_se),
/// cluster_escape_expectation(_se), origin_cluster_mean, replicates.
ExperimentReport survival_curve(const PercolationParams& params, KRange j_range, unsigned horizon,
                                std::uint64_t replicates, const RunOptions& options = {});

struct AlphaBracket {
  double low = 0.0;
  double high = 0.0;
};

struct AlphaCOptions {
  double tolerance = 0.02;  ///< stop once the bracket is this narrow
  unsigned max_steps = 12;
  RunOptions run;
};

/// Summary keys: verdict ("zero", "interval", "infinite"), alpha_c_low,
/// alpha_c_high, lower_bound, slack, lower_bound_ok. Throws BracketError when
/// the crossing criterion does not change sign across the bracket.
ExperimentReport estimate_alpha_c(unsigned order, double beta, unsigned k, std::uint64_t replicates,
                                  AlphaBracket bracket, std::uint64_t seed, const AlphaCOptions& options = {});

/// Columns: k, mean_size(_se), growth_ratio(_se), replicates. The growth
/// ratio compares each row with the previous one and is NaN on the first.
ExperimentReport mean_cluster_size(const PercolationParams& params, KRange k_range, std::uint64_t replicates,
                                   const RunOptions& options = {});

/// One row: n, K, threshold, meta_vertices, mean_degree(_se),
/// giant_fraction(_se), predicted_giant_fraction, same_ball_meta_edges,
/// degenerate_replicates, replicates.
ExperimentReport meta_graph_experiment(const PercolationParams& params, unsigned n, double K,
                                       std::uint64_t replicates, const RunOptions& options = {});

/// One row per threshold s: s, plain(_se), mixed(_se), difference(_se),
/// dominates. The plain model runs at alpha, the mixed one at
/// (alpha (1 + epsilon), beta, gamma_for_epsilon).
ExperimentReport mixed_comparison(const PercolationParams& params, double epsilon, unsigned k,
                                  std::uint64_t replicates, std::span<const std::uint64_t> thresholds,
                                  const RunOptions& options = {});

/// Columns: n, epsilon, s, xi, t; summary holds the certificate flags.
ExperimentReport recursion_report(const analytic::RecursionTrace& trace);

/// Columns: lag, base_point, total_variation, then law_k for k = 0..L.
ExperimentReport stationarity_report(const embedding::StationarityReport& report);

}  // namespace hierperc::experiments
