#include "hierperc/clusters.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "hierperc/errors.hpp"
#include "hierperc/rng.hpp"

namespace hierperc {

DisjointSetForest::DisjointSetForest(std::uint32_t element_count)
    : parent_(element_count), rank_(element_count, 0), size_(element_count, 1), components_(element_count) {
  std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
}

std::uint32_t DisjointSetForest::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::uint32_t DisjointSetForest::find(std::uint32_t x) const {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

bool DisjointSetForest::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  if (rank_[a] == rank_[b]) ++rank_[a];
  --components_;
  return true;
}

void DisjointSetForest::flatten() {
  for (std::uint32_t x = 0; x < parent_.size(); ++x) parent_[x] = find(x);
}

std::uint64_t histogram_total(const ClusterStats& stats) {
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < stats.histogram.size(); ++s) total += s * stats.histogram[s];
  return total;
}

DisjointSetForest components(const Configuration& config) {
  DisjointSetForest forest(static_cast<std::uint32_t>(config.vertex_count()));
  for (const auto& [u, v] : config.edges()) forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  forest.flatten();
  return forest;
}

ClusterStats stats(const DisjointSetForest& forest, const Configuration& config) {
  ClusterStats out;
  const std::uint32_t n = forest.element_count();
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (!forest.is_root(x) || !config.is_open(x)) continue;
    const std::uint64_t s = forest.component_size(x);
    if (s >= out.histogram.size()) out.histogram.resize(s + 1, 0);
    ++out.histogram[s];
    out.open_vertices += s;
    if (s > out.max_size) {
      out.max_size = s;
      maximal.clear();
    }
    if (s == out.max_size) maximal.push_back(x);
  }
  out.maximal_count = maximal.size();
  if (!maximal.empty()) {
    std::size_t pick = 0;
    if (maximal.size() > 1) {
      Engine rng = make_stream(config.params().seed, config.params().replicate, kTieBreakStream);
      pick = std::uniform_int_distribution<std::size_t>(0, maximal.size() - 1)(rng);
    }
    out.maximal_root = maximal[pick];
  }
  if (config.is_open(0)) {
    out.origin_size = forest.component_size(0);
    out.origin_in_maximal = !maximal.empty() && forest.find(0) == out.maximal_root;
  }
  return out;
}

ClusterStats cluster_stats(const Configuration& config) { return stats(components(config), config); }

bool connects(const Configuration& config, std::span<const Label> first, std::span<const Label> second) {
  std::vector<Label> a(first.begin(), first.end());
  std::vector<Label> b(second.begin(), second.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Label> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw ParameterError("connects() needs disjoint vertex sets");

  auto in = [](const std::vector<Label>& set, Label x) { return std::binary_search(set.begin(), set.end(), x); };
  return std::any_of(config.edges().begin(), config.edges().end(), [&](const Edge& e) {
    return (in(a, e.first) && in(b, e.second)) || (in(b, e.first) && in(a, e.second));
  });
}

NestedOriginStats nested_origin_stats(const Configuration& config) {
  const unsigned n = config.params().radius;
  const unsigned order = config.params().order;
  NestedOriginStats out;
  out.cluster_size.resize(n + 1);
  out.cluster_escapes.resize(n + 1);
  out.ball_escapes.resize(n + 1);

  // Edges sorted by their larger endpoint: those inside B_j(0) form a prefix.
  std::vector<Edge> edges(config.edges().begin(), config.edges().end());
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.second < y.second; });

  DisjointSetForest forest(static_cast<std::uint32_t>(config.vertex_count()));
  std::size_t inside = 0;
  std::uint64_t ball_size = 1;
  for (unsigned j = 0; j <= n; ++j, ball_size *= order) {
    while (inside < edges.size() && edges[inside].second < ball_size) {
      forest.unite(static_cast<std::uint32_t>(edges[inside].first), static_cast<std::uint32_t>(edges[inside].second));
      ++inside;
    }
    const bool origin_open = config.is_open(0);
    const std::uint32_t root = forest.find(0);
    out.cluster_size[j] = origin_open ? forest.component_size(0) : 0;
    bool ball_escape = false;
    bool cluster_escape = false;
    for (std::size_t e = inside; e < edges.size() && !cluster_escape; ++e) {
      if (edges[e].first >= ball_size) continue;
      ball_escape = true;
      cluster_escape = origin_open && forest.find(static_cast<std::uint32_t>(edges[e].first)) == root;
    }
    out.ball_escapes[j] = ball_escape;
    out.cluster_escapes[j] = cluster_escape;
  }
  return out;
}

}  // namespace hierperc
