#pragma once

// Connected components of a configuration and the cluster statistics built
// on them: the origin cluster C_n(0), a largest cluster C^m_n(0) with uniform
// tie-break, the size histogram and ball-to-set connection events.

#include <cstdint>
#include <span>
#include <vector>

#include "hierperc/sampler.hpp"

namespace hierperc {

/// Union by rank with path halving over the label offsets 0..N^n-1.
class DisjointSetForest {
 public:
  explicit DisjointSetForest(std::uint32_t element_count);

  std::uint32_t find(std::uint32_t x);
  /// Non-mutating lookup, safe to call concurrently once construction is done.
  std::uint32_t find(std::uint32_t x) const;

  /// Returns false if a and b were already joined.
  bool unite(std::uint32_t a, std::uint32_t b);

  /// Points every element straight at its root.
  void flatten();

  std::uint32_t component_size(std::uint32_t x) const { return size_[find(x)]; }
  bool is_root(std::uint32_t x) const { return parent_[x] == x; }
  std::uint32_t element_count() const noexcept { return static_cast<std::uint32_t>(parent_.size()); }
  std::uint32_t component_count() const noexcept { return components_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint32_t> size_;
  std::uint32_t components_;
};

struct ClusterStats {
  std::uint64_t origin_size = 0;  ///< |C_n(0)|, 0 when the origin is closed
  std::uint64_t max_size = 0;     ///< |C^m_n(0)|
  /// histogram[s] = number of clusters of open vertices with exactly s members.
  std::vector<std::uint64_t> histogram;
  Label maximal_root = 0;          ///< root of the chosen largest cluster
  std::uint64_t maximal_count = 0;  ///< number of clusters tied at max_size
  bool origin_in_maximal = false;
  std::uint64_t open_vertices = 0;
};

/// Sum of s * histogram[s]; equals the number of open vertices.
std::uint64_t histogram_total(const ClusterStats& stats);

/// Closed vertices stay singletons; they carry no edges.
DisjointSetForest components(const Configuration& config);

/// The largest-cluster tie-break draws from the (seed, replicate, kTieBreakStream)
/// stream, uniform over the tied clusters.
ClusterStats stats(const DisjointSetForest& forest, const Configuration& config);

ClusterStats cluster_stats(const Configuration& config);

/// True iff some edge has one endpoint in each set. Throws ParameterError if
/// the sets intersect.
bool connects(const Configuration& config, std::span<const Label> first, std::span<const Label> second);

/// Per radius j = 0..n inside one configuration on B_n(0):
struct NestedOriginStats {
  std::vector<std::uint64_t> cluster_size;  ///< |C_j(0)| using edges inside B_j(0)
  std::vector<bool> cluster_escapes;        ///< C_j(0) <-> B_n(0) \ B_j(0)
  std::vector<bool> ball_escapes;           ///< B_j(0) <-> B_n(0) \ B_j(0)
};

NestedOriginStats nested_origin_stats(const Configuration& config);

}  // namespace hierperc
