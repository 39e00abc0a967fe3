#pragma once

// Percolation configurations on the ball B_n(0).
//
// Each distance-k pair is an edge with probability p_k = 1 - exp(-alpha / beta^k),
// independently. In the mixed model every vertex is first closed with
// probability gamma and edges are kept only between open vertices.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hierperc/lattice.hpp"

namespace hierperc {

struct PercolationParams {
  unsigned order = 2;
  double alpha = 0.0;
  double beta = 1.0;
  unsigned radius = 0;
  double gamma = 0.0;  ///< vertex-closure probability
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;

  /// Throws ParameterError unless N >= 2, alpha >= 0, beta > 0 and gamma in [0, 1].
  void validate() const;
  /// N^n; throws CapacityError if that does not fit.
  std::uint64_t vertex_count() const;
};

using Edge = std::pair<Label, Label>;

/// One sampled realization. Immutable once built.
class Configuration {
 public:
  /// Sorts and deduplicates `edges` (each stored as u < v). Throws
  /// ParameterError on a self-loop, an endpoint outside B_n(0), a mask that is
  /// missing (gamma > 0), unexpected (gamma == 0) or of the wrong length, or an
  /// edge touching a closed vertex.
  Configuration(PercolationParams params, std::vector<Edge> edges,
                std::optional<std::vector<bool>> open_mask = std::nullopt);

  const PercolationParams& params() const noexcept { return params_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::optional<std::vector<bool>>& open_mask() const noexcept { return open_mask_; }
  std::uint64_t vertex_count() const noexcept { return vertex_count_; }

  bool is_open(Label v) const { return !open_mask_ || (*open_mask_)[v]; }
  std::uint64_t open_count() const;

  /// Entry k holds the number of edges of length k, for k = 0..n (entry 0 is always 0).
  std::vector<std::uint64_t> edge_counts_by_distance() const;

 private:
  PercolationParams params_;
  std::uint64_t vertex_count_;
  std::vector<Edge> edges_;
  std::optional<std::vector<bool>> open_mask_;
};

enum class SamplerKind { naive, skip };

/// p_k = 1 - exp(-alpha beta^{-k}) computed as -expm1(-alpha beta^{-k}).
double edge_prob(double alpha, double beta, unsigned k);

/// Visits every distance-k pair index and keeps it with probability p_k.
/// Cost grows like N^{2n}; intended as a reference.
Configuration sample_ball_naive(const PercolationParams& params, std::uint64_t capacity = kDefaultCapacity);

/// Same law as sample_ball_naive. Present pair indices of each class are
/// reached by geometric jumps 1 + floor(ln U / ln(1 - p_k)); when p_k > 1/2
/// the absent indices are jumped over instead. Classes are drawn in increasing
/// k and indices in increasing order.
Configuration sample_ball_skip(const PercolationParams& params, std::uint64_t capacity = kDefaultCapacity);

/// Mixed site-bond model: each vertex is open with probability 1 - gamma
/// (stream kMaskStream), edges as in the bond sampler but only between open
/// vertices. With gamma == 0 this is the bond sampler and no mask is stored.
Configuration sample_mixed(const PercolationParams& params, SamplerKind kind = SamplerKind::skip,
                           std::uint64_t capacity = kDefaultCapacity);

/// Dispatches to the bond sampler of `kind` or to sample_mixed when gamma > 0.
Configuration sample(const PercolationParams& params, SamplerKind kind = SamplerKind::skip,
                     std::uint64_t capacity = kDefaultCapacity);

}  // namespace hierperc
