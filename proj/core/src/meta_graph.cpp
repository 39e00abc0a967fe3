#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "hierperc/clusters.hpp"
#include "hierperc/errors.hpp"
#include "hierperc/experiments.hpp"
#include "hierperc/statistics.hpp"
#include "parallel.hpp"

namespace hierperc::experiments {

namespace {

constexpr std::uint32_t kUnselected = std::numeric_limits<std::uint32_t>::max();

struct MetaSample {
  bool degenerate = true;
  std::uint64_t meta_vertices = 0;
  std::uint64_t meta_edges = 0;
  std::uint64_t same_ball_edges = 0;
  double mean_degree = 0.0;
  double giant_fraction = 0.0;
};

// Clusters are formed from edges inside the radius-n sub-balls only. Each
// cluster larger than the threshold is cut, in label order, into chunks of
// `chunk` vertices (the remainder joins the last chunk); the first `chunk`
// vertices of every chunk are its selected set. The rule never looks at
// edges of length n + 1.
MetaSample meta_sample(const Configuration& config, unsigned n, double threshold, std::uint64_t chunk) {
  const unsigned order = config.params().order;
  const auto count = static_cast<std::uint32_t>(config.vertex_count());
  const std::uint64_t sub_ball = checked_pow(order, n);

  DisjointSetForest forest(count);
  for (const auto& [u, v] : config.edges()) {
    if (u / sub_ball == v / sub_ball) forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  forest.flatten();

  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t v = 0; v < count; ++v) {
    if (config.is_open(v)) members[forest.find(v)].push_back(v);
  }

  std::vector<std::uint32_t> meta_of(count, kUnselected);
  std::vector<std::uint64_t> meta_ball;
  for (const auto& cluster : members) {
    if (static_cast<double>(cluster.size()) <= threshold) continue;
    const std::uint64_t pieces = cluster.size() / chunk;
    for (std::uint64_t i = 0; i < pieces; ++i) {
      const auto id = static_cast<std::uint32_t>(meta_ball.size());
      meta_ball.push_back(cluster.front() / sub_ball);
      for (std::uint64_t r = 0; r < chunk; ++r) meta_of[cluster[i * chunk + r]] = id;
    }
  }

  MetaSample out;
  out.meta_vertices = meta_ball.size();
  if (meta_ball.empty()) return out;
  out.degenerate = false;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;
  for (const auto& [u, v] : config.edges()) {
    if (u / sub_ball == v / sub_ball) continue;
    const std::uint32_t a = meta_of[u];
    const std::uint32_t b = meta_of[v];
    if (a == kUnselected || b == kUnselected) continue;
    links.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  DisjointSetForest meta(static_cast<std::uint32_t>(meta_ball.size()));
  for (const auto& [a, b] : links) {
    if (meta_ball[a] == meta_ball[b]) ++out.same_ball_edges;
    meta.unite(a, b);
  }
  std::uint32_t giant = 0;
  for (std::uint32_t m = 0; m < meta.element_count(); ++m) giant = std::max(giant, meta.component_size(m));

  const auto vertices = static_cast<double>(meta_ball.size());
  out.meta_edges = links.size();
  out.mean_degree = 2.0 * static_cast<double>(links.size()) / vertices;
  out.giant_fraction = static_cast<double>(giant) / vertices;
  return out;
}

}  // namespace

ExperimentReport meta_graph_experiment(const PercolationParams& params, unsigned n, double K,
                                       std::uint64_t replicates, const RunOptions& options) {
  params.validate();
  if (replicates < 1) throw ParameterError("at least one replicate is required");
  const double order = params.order;
  if (!(params.beta > order && params.beta < order * order)) {
    throw ParameterError("meta_graph_experiment needs N < beta < N^2");
  }
  if (!(K > 0.0) || !std::isfinite(K)) throw ParameterError("K must be finite and > 0");
  const auto start = std::chrono::steady_clock::now();

  PercolationParams p = params;
  p.radius = n + 1;
  p.seed = row_seed(params.seed, 0);
  p.vertex_count();
  const double threshold = K * std::pow(params.beta / order, n);
  const auto chunk = static_cast<std::uint64_t>(std::max(1.0, std::ceil(threshold)));

  const auto samples = detail::run_replicates<MetaSample>(replicates, options.threads, [&](std::uint64_t i) {
    PercolationParams q = p;
    q.replicate = i;
    return meta_sample(sample(q, options.sampler, options.capacity), n, threshold, chunk);
  });

  std::vector<double> degrees;
  std::vector<double> giants;
  std::vector<double> vertices;
  std::uint64_t degenerate = 0;
  std::uint64_t same_ball = 0;
  for (const auto& s : samples) {
    same_ball += s.same_ball_edges;
    if (s.degenerate) {
      ++degenerate;
      continue;
    }
    degrees.push_back(s.mean_degree);
    giants.push_back(s.giant_fraction);
    vertices.push_back(static_cast<double>(s.meta_vertices));
  }
  const Estimate degree = estimate(degrees);
  const Estimate giant = estimate(giants);
  const Estimate meta_vertices = estimate(vertices);
  const bool any = !degrees.empty();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ExperimentReport report;
  report.name = "meta_graph";
  report.master_seed = params.seed;
  report.parameters = {{"order", std::int64_t{params.order}}, {"alpha", params.alpha}, {"beta", params.beta},
                       {"gamma", params.gamma},                {"n", std::int64_t{n}},  {"K", K}};
  report.columns = {"n",
                    "K",
                    "threshold",
                    "meta_vertices",
                    "mean_degree",
                    "mean_degree_se",
                    "giant_fraction",
                    "giant_fraction_se",
                    "predicted_giant_fraction",
                    "same_ball_meta_edges",
                    "degenerate_replicates",
                    "replicates"};
  report.rows.push_back({double(n), K, threshold, any ? meta_vertices.mean : 0.0, any ? degree.mean : nan,
                         any ? degree.std_error : nan, any ? giant.mean : nan, any ? giant.std_error : nan,
                         any ? analytic::giant_fraction(degree.mean) : nan, static_cast<double>(same_ball),
                         static_cast<double>(degenerate), static_cast<double>(replicates)});
  report.summary = {{"degenerate_fraction", static_cast<double>(degenerate) / static_cast<double>(replicates)},
                    {"same_ball_meta_edges", static_cast<std::int64_t>(same_ball)}};
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace hierperc::experiments
