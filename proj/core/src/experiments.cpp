#include "hierperc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "hierperc/clusters.hpp"
#include "hierperc/errors.hpp"
#include "hierperc/rng.hpp"
#include "hierperc/statistics.hpp"
#include "parallel.hpp"

namespace hierperc::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_replicates(std::uint64_t replicates) {
  if (replicates < 1) throw ParameterError("at least one replicate is required");
}

void require_range(KRange range) {
  if (range.first > range.last) throw ParameterError("empty radius range");
}

ReportFields model_fields(const PercolationParams& p) {
  return {{"order", std::int64_t{p.order}}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
}

double as_double(std::uint64_t x) { return static_cast<double>(x); }

struct FractionSample {
  double largest = 0.0;
  double origin_in_largest = 0.0;
  double origin_fraction = 0.0;
  double origin_large = 0.0;
};

// Mean of one field across replicate results.
template <class T, class Field>
Estimate field_estimate(const std::vector<T>& samples, Field field) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(field(s));
  return estimate(values);
}

struct CrossingPoint {
  Estimate small;
  Estimate large;
  double difference = 0.0;
  double difference_se = 0.0;
};

CrossingPoint crossing_point(unsigned order, double alpha, double beta, unsigned k, std::uint64_t replicates,
                             std::uint64_t master, std::uint64_t row, const RunOptions& options) {
  auto largest_fraction = [&](unsigned radius, std::uint64_t seed) {
    PercolationParams p{order, alpha, beta, radius, 0.0, seed, 0};
    p.validate();
    const double volume = as_double(p.vertex_count());
    const auto values = detail::run_replicates<double>(replicates, options.threads, [&](std::uint64_t i) {
      PercolationParams q = p;
      q.replicate = i;
      return as_double(cluster_stats(sample(q, options.sampler, options.capacity)).max_size) / volume;
    });
    return estimate(values);
  };
  CrossingPoint point;
  point.small = largest_fraction(k, row_seed(master, 2 * row));
  point.large = largest_fraction(k + 2, row_seed(master, 2 * row + 1));
  point.difference = point.large.mean - point.small.mean;
  point.difference_se = std::hypot(point.small.std_error, point.large.std_error);
  return point;
}

}  // namespace

std::uint64_t row_seed(std::uint64_t master_seed, std::uint64_t row) { return derive_seed(master_seed, row, kRowStream); }

ExperimentReport fraction_curve(const PercolationParams& params, KRange k_range, std::uint64_t replicates,
                                double threshold, const RunOptions& options) {
  params.validate();
  require_range(k_range);
  require_replicates(replicates);
  if (!(threshold >= 0.0)) throw ParameterError("threshold fraction must be >= 0");
  Stopwatch clock;

  ExperimentReport report;
  report.name = "fraction_curve";
  report.master_seed = params.seed;
  report.parameters = model_fields(params);
  report.parameters.emplace_back("threshold", threshold);
  report.parameters.emplace_back("k_first", std::int64_t{k_range.first});
  report.parameters.emplace_back("k_last", std::int64_t{k_range.last});
  report.columns = {"k",
                    "vertices",
                    "largest_fraction",
                    "largest_fraction_se",
                    "origin_in_largest",
                    "origin_in_largest_se",
                    "origin_fraction",
                    "origin_fraction_se",
                    "origin_large",
                    "origin_large_se",
                    "replicates"};

  for (unsigned k = k_range.first; k <= k_range.last; ++k) {
    PercolationParams p = params;
    p.radius = k;
    p.seed = row_seed(params.seed, k - k_range.first);
    const double volume = as_double(p.vertex_count());
    const auto samples = detail::run_replicates<FractionSample>(replicates, options.threads, [&](std::uint64_t i) {
      PercolationParams q = p;
      q.replicate = i;
      const ClusterStats st = cluster_stats(sample(q, options.sampler, options.capacity));
      const double origin = as_double(st.origin_size);
      return FractionSample{as_double(st.max_size) / volume, st.origin_in_maximal ? 1.0 : 0.0, origin / volume,
                            origin >= threshold * volume ? 1.0 : 0.0};
    });
    const Estimate largest = field_estimate(samples, [](const auto& s) { return s.largest; });
    const Estimate in_largest = field_estimate(samples, [](const auto& s) { return s.origin_in_largest; });
    const Estimate origin = field_estimate(samples, [](const auto& s) { return s.origin_fraction; });
    const Estimate large = field_estimate(samples, [](const auto& s) { return s.origin_large; });
    report.rows.push_back({double(k), volume, largest.mean, largest.std_error, in_largest.mean, in_largest.std_error,
                           origin.mean, origin.std_error, large.mean, large.std_error, as_double(replicates)});
  }
  report.wall_clock_seconds = clock.seconds();
  return report;
}

ExperimentReport survival_curve(const PercolationParams& params, KRange j_range, unsigned horizon,
                                std::uint64_t replicates, const RunOptions& options) {
  params.validate();
  require_range(j_range);
  require_replicates(replicates);
  if (j_range.last >= horizon) throw ParameterError("survival_curve needs j < horizon");
  Stopwatch clock;

  PercolationParams p = params;
  p.radius = horizon;
  p.seed = row_seed(params.seed, 0);
  p.vertex_count();

  const auto samples = detail::run_replicates<NestedOriginStats>(replicates, options.threads, [&](std::uint64_t i) {
    PercolationParams q = p;
    q.replicate = i;
    return nested_origin_stats(sample(q, options.sampler, options.capacity));
  });

  ExperimentReport report;
  report.name = "survival_curve";
  report.master_seed = params.seed;
  report.parameters = model_fields(params);
  report.parameters.emplace_back("horizon", std::int64_t{horizon});
  report.columns = {"j",
                    "ball_escape",
                    "ball_escape_se",
                    "ball_escape_analytic",
                    "cluster_escape",
                    "cluster_escape_se",
                    "cluster_escape_expectation",
                    "cluster_escape_expectation_se",
                    "origin_cluster_mean",
                    "replicates"};

  for (unsigned j = j_range.first; j <= j_range.last; ++j) {
    const double series = analytic::escape_series(params.order, params.beta, j, horizon);
    const Estimate ball = field_estimate(samples, [&](const auto& s) { return s.ball_escapes[j] ? 1.0 : 0.0; });
    const Estimate cluster = field_estimate(samples, [&](const auto& s) { return s.cluster_escapes[j] ? 1.0 : 0.0; });
    const Estimate expectation = field_estimate(samples, [&](const auto& s) {
      return -std::expm1(-params.alpha * as_double(s.cluster_size[j]) * series);
    });
    const Estimate size = field_estimate(samples, [&](const auto& s) { return as_double(s.cluster_size[j]); });
    const double analytic_ball =
        params.gamma == 0.0 ? analytic::ball_escape_prob(params.order, params.alpha, params.beta, j, horizon) : kNaN;
    report.rows.push_back({double(j), ball.mean, ball.std_error, analytic_ball, cluster.mean, cluster.std_error,
                           expectation.mean, expectation.std_error, size.mean, as_double(replicates)});
  }
  report.wall_clock_seconds = clock.seconds();
  return report;
}

ExperimentReport estimate_alpha_c(unsigned order, double beta, unsigned k, std::uint64_t replicates,
                                  AlphaBracket bracket, std::uint64_t seed, const AlphaCOptions& options) {
  if (order < 2) throw ParameterError("order N must be at least 2");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  if (k < 1) throw ParameterError("estimate_alpha_c needs k >= 1");
  require_replicates(replicates);
  Stopwatch clock;

  const double n = order;
  ExperimentReport report;
  report.name = "alpha_c";
  report.master_seed = seed;
  report.parameters = {{"order", std::int64_t{order}},       {"beta", beta},
                       {"k", std::int64_t{k}},               {"replicates", static_cast<std::int64_t>(replicates)},
                       {"bracket_low", bracket.low},         {"bracket_high", bracket.high},
                       {"tolerance", options.tolerance},     {"max_steps", std::int64_t{options.max_steps}}};
  report.columns = {"step",         "alpha",          "fraction_k",    "fraction_k_se", "fraction_k2",
                    "fraction_k2_se", "difference", "difference_se", "supercritical"};

  if (beta <= n || beta >= n * n) {
    const bool zero = beta <= n;
    report.summary = {{"verdict", std::string(zero ? "zero" : "infinite")},
                      {"alpha_c_low", zero ? 0.0 : std::numeric_limits<double>::infinity()},
                      {"alpha_c_high", zero ? 0.0 : std::numeric_limits<double>::infinity()},
                      {"lower_bound", zero ? 0.0 : analytic::alpha_c_lower_bound(order, beta)},
                      {"slack", 0.0},
                      {"lower_bound_ok", true}};
    report.wall_clock_seconds = clock.seconds();
    return report;
  }

  if (!(bracket.low >= 0.0 && bracket.high > bracket.low && std::isfinite(bracket.high))) {
    throw ParameterError("alpha bracket must satisfy 0 <= low < high < inf");
  }

  std::uint64_t step = 0;
  auto evaluate = [&](double alpha) {
    const CrossingPoint point = crossing_point(order, alpha, beta, k, replicates, seed, step, options.run);
    const bool super = point.difference >= 0.0;
    report.rows.push_back({double(step), alpha, point.small.mean, point.small.std_error, point.large.mean,
                           point.large.std_error, point.difference, point.difference_se, super ? 1.0 : 0.0});
    ++step;
    return point;
  };

  const CrossingPoint at_low = evaluate(bracket.low);
  const CrossingPoint at_high = evaluate(bracket.high);
  if (at_low.difference >= 0.0 || at_high.difference < 0.0) {
    throw BracketError("alpha bracket [" + std::to_string(bracket.low) + ", " + std::to_string(bracket.high) +
                       "] does not straddle the crossing");
  }

  double low = bracket.low;
  double high = bracket.high;
  double low_se = at_low.difference_se;
  while (high - low > options.tolerance && step < options.max_steps) {
    const double mid = 0.5 * (low + high);
    const CrossingPoint point = evaluate(mid);
    if (point.difference >= 0.0) {
      high = mid;
    } else {
      low = mid;
      low_se = point.difference_se;
    }
  }

  // Noise in the crossing statistic, mapped to alpha through the secant between
  // the nearest evaluations on either side that are resolved at two sigma.
  double below_alpha = bracket.low;
  double below_diff = at_low.difference;
  double above_alpha = bracket.high;
  double above_diff = at_high.difference;
  for (const auto& row : report.rows) {
    const double alpha = row[1];
    const double diff = row[6];
    const double se = row[7];
    if (alpha <= low && diff < -2.0 * se && alpha >= below_alpha) {
      below_alpha = alpha;
      below_diff = diff;
    }
    if (alpha >= high && diff > 2.0 * se && alpha <= above_alpha) {
      above_alpha = alpha;
      above_diff = diff;
    }
  }
  double slope = (above_diff - below_diff) / (above_alpha - below_alpha);
  if (!(slope > 0.0)) slope = (at_high.difference - at_low.difference) / (bracket.high - bracket.low);
  const double slack = 3.0 * low_se / slope;
  const double lower_bound = analytic::alpha_c_lower_bound(order, beta);
  report.summary = {{"verdict", std::string("interval")},
                    {"alpha_c_low", low},
                    {"alpha_c_high", high},
                    {"lower_bound", lower_bound},
                    {"slack", slack},
                    {"lower_bound_ok", low >= lower_bound - slack}};
  report.wall_clock_seconds = clock.seconds();
  return report;
}

ExperimentReport mean_cluster_size(const PercolationParams& params, KRange k_range, std::uint64_t replicates,
                                   const RunOptions& options) {
  params.validate();
  require_range(k_range);
  require_replicates(replicates);
  Stopwatch clock;

  ExperimentReport report;
  report.name = "mean_cluster_size";
  report.master_seed = params.seed;
  report.parameters = model_fields(params);
  report.parameters.emplace_back("k_first", std::int64_t{k_range.first});
  report.parameters.emplace_back("k_last", std::int64_t{k_range.last});
  report.columns = {"k", "mean_size", "mean_size_se", "growth_ratio", "growth_ratio_se", "replicates"};

  std::vector<Estimate> means;
  for (unsigned k = k_range.first; k <= k_range.last; ++k) {
    PercolationParams p = params;
    p.radius = k;
    p.seed = row_seed(params.seed, k - k_range.first);
    p.vertex_count();
    const auto sizes = detail::run_replicates<double>(replicates, options.threads, [&](std::uint64_t i) {
      PercolationParams q = p;
      q.replicate = i;
      return as_double(cluster_stats(sample(q, options.sampler, options.capacity)).origin_size);
    });
    const Estimate mean = estimate(sizes);
    double ratio = kNaN;
    double ratio_se = kNaN;
    if (!means.empty() && means.back().mean > 0.0 && mean.mean > 0.0) {
      const Estimate& prev = means.back();
      ratio = mean.mean / prev.mean;
      ratio_se = ratio * std::hypot(mean.std_error / mean.mean, prev.std_error / prev.mean);
    }
    means.push_back(mean);
    report.rows.push_back({double(k), mean.mean, mean.std_error, ratio, ratio_se, as_double(replicates)});
  }

  const Estimate& first = means.front();
  const Estimate& last = means.back();
  double total = kNaN;
  double total_se = kNaN;
  if (first.mean > 0.0 && last.mean > 0.0) {
    total = last.mean / first.mean;
    total_se = total * std::hypot(first.std_error / first.mean, last.std_error / last.mean);
  }
  report.summary = {{"total_growth", total}, {"total_growth_se", total_se}};
  report.wall_clock_seconds = clock.seconds();
  return report;
}

ExperimentReport mixed_comparison(const PercolationParams& params, double epsilon, unsigned k,
                                  std::uint64_t replicates, std::span<const std::uint64_t> thresholds,
                                  const RunOptions& options) {
  params.validate();
  require_replicates(replicates);
  if (thresholds.empty()) throw ParameterError("mixed_comparison needs at least one threshold");
  Stopwatch clock;

  PercolationParams plain = params;
  plain.radius = k;
  plain.gamma = 0.0;
  plain.seed = row_seed(params.seed, 0);
  plain.vertex_count();

  PercolationParams mixed = plain;
  const analytic::CouplingParams coupling =
      analytic::gamma_for_epsilon(params.order, params.alpha, params.beta, epsilon);
  mixed.alpha = params.alpha * (1.0 + epsilon);
  mixed.gamma = coupling.gamma;
  mixed.seed = row_seed(params.seed, 1);

  auto origin_sizes = [&](const PercolationParams& p) {
    return detail::run_replicates<std::uint64_t>(replicates, options.threads, [&](std::uint64_t i) {
      PercolationParams q = p;
      q.replicate = i;
      return cluster_stats(sample(q, options.sampler, options.capacity)).origin_size;
    });
  };
  const auto plain_sizes = origin_sizes(plain);
  const auto mixed_sizes = origin_sizes(mixed);

  ExperimentReport report;
  report.name = "mixed_comparison";
  report.master_seed = params.seed;
  report.parameters = model_fields(params);
  report.parameters.emplace_back("epsilon", epsilon);
  report.parameters.emplace_back("k", std::int64_t{k});
  report.columns = {"s", "plain", "plain_se", "mixed", "mixed_se", "difference", "difference_se", "dominates"};

  bool all = true;
  for (std::uint64_t s : thresholds) {
    auto tail = [s](const std::vector<std::uint64_t>& sizes) {
      std::vector<double> hits;
      hits.reserve(sizes.size());
      for (std::uint64_t size : sizes) hits.push_back(size >= s ? 1.0 : 0.0);
      return estimate(hits);
    };
    const Estimate a = tail(plain_sizes);
    const Estimate b = tail(mixed_sizes);
    const bool dominates = not_below(b, a);
    all = all && dominates;
    report.rows.push_back({as_double(s), a.mean, a.std_error, b.mean, b.std_error, b.mean - a.mean,
                           std::hypot(a.std_error, b.std_error), dominates ? 1.0 : 0.0});
  }
  report.summary = {{"gamma", coupling.gamma},
                    {"lambda1", coupling.lambda1},
                    {"lambda2", coupling.lambda2},
                    {"mixed_alpha", mixed.alpha},
                    {"all_dominate", all}};
  report.wall_clock_seconds = clock.seconds();
  return report;
}

ExperimentReport recursion_report(const analytic::RecursionTrace& trace) {
  ExperimentReport report;
  report.name = "renorm";
  report.parameters = {{"order", std::int64_t{trace.order}}, {"block", std::int64_t{trace.block}},
                       {"eta", trace.eta},                    {"alpha", trace.alpha},
                       {"beta", trace.beta}};
  report.columns = {"n", "epsilon", "s", "xi", "t", "contraction_ok", "certificate_ok", "comparison_ok"};
  auto flag = [](const std::vector<bool>& flags, std::size_t n) {
    return n < flags.size() ? (flags[n] ? 1.0 : 0.0) : kNaN;
  };
  for (std::size_t n = 0; n < trace.s.size(); ++n) {
    report.rows.push_back({double(n), n < trace.epsilon.size() ? trace.epsilon[n] : kNaN, trace.s[n], trace.xi[n],
                           n < trace.t.size() ? trace.t[n] : kNaN, flag(trace.contraction_ok, n),
                           flag(trace.certificate_ok, n), flag(trace.comparison_ok, n)});
  }
  report.summary = {{"pair_bound", trace.pair_bound},
                    {"contraction_rate", trace.contraction_rate},
                    {"contraction_holds", trace.contraction_holds()},
                    {"certificate_preconditions", trace.certificate_preconditions},
                    {"certified", trace.certified()},
                    {"s_limit", trace.s_limit()},
                    {"t_limit", trace.t.empty() ? kNaN : trace.t_limit()}};
  return report;
}

ExperimentReport stationarity_report(const embedding::StationarityReport& check) {
  ExperimentReport report;
  report.name = "kvn_check";
  report.parameters = {{"order", std::int64_t{check.order}},
                       {"length", std::int64_t{check.length}},
                       {"trials", static_cast<std::int64_t>(check.trials)}};
  std::size_t width = 0;
  for (const auto& row : check.rows) width = std::max(width, row.distance_law.size());
  report.columns = {"lag", "base_point"};
  for (std::size_t d = 0; d < width; ++d) report.columns.push_back("law_" + std::to_string(d));
  for (const auto& row : check.rows) {
    std::vector<double> values{as_double(row.lag), static_cast<double>(row.base_point)};
    for (std::size_t d = 0; d < width; ++d) values.push_back(d < row.distance_law.size() ? row.distance_law[d] : 0.0);
    report.rows.push_back(std::move(values));
  }
  report.summary = {{"max_total_variation", check.max_total_variation},
                    {"within_three_sigma", check.within_three_sigma}};
  return report;
}

}  // namespace hierperc::experiments
