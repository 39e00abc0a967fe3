#include "hierperc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hierperc/errors.hpp"
#include "hierperc/rng.hpp"

namespace hierperc {

namespace {

// Forest indices are 32-bit.
constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 32;

std::uint64_t checked_vertex_count(const PercolationParams& params, std::uint64_t capacity) {
  params.validate();
  const std::uint64_t count = params.vertex_count();
  if (count > std::min(capacity, kMaxVertices)) {
    throw CapacityError("B_" + std::to_string(params.radius) + " has " + std::to_string(count) +
                        " vertices, capacity is " + std::to_string(std::min(capacity, kMaxVertices)));
  }
  return count;
}

// Calls emit(i) for each index in [0, count) selected by independent trials
// whose success probability satisfies log(1 - p) == log_fail.
template <class Emit>
void geometric_skip(Engine& rng, std::uint64_t count, double log_fail, Emit&& emit) {
  std::uint64_t next = 0;
  while (next < count) {
    const double failures = std::floor(std::log(uniform_open_closed(rng)) / log_fail);
    if (failures >= static_cast<double>(count - next)) return;
    next += static_cast<std::uint64_t>(failures);
    emit(next);
    ++next;
  }
}

void require_bond_model(const PercolationParams& params) {
  if (params.gamma != 0.0) throw ParameterError("bond samplers need gamma == 0; use sample_mixed");
}

}  // namespace

void PercolationParams::validate() const {
  if (order < 2) throw ParameterError("order N must be at least 2");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be finite and >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
}

std::uint64_t PercolationParams::vertex_count() const { return checked_pow(order, radius); }

Configuration::Configuration(PercolationParams params, std::vector<Edge> edges,
                             std::optional<std::vector<bool>> open_mask)
    : params_(params), vertex_count_(0), edges_(std::move(edges)), open_mask_(std::move(open_mask)) {
  params_.validate();
  vertex_count_ = params_.vertex_count();
  if (open_mask_.has_value() != (params_.gamma > 0.0)) {
    throw ParameterError("an open mask must be present exactly when gamma > 0");
  }
  if (open_mask_ && open_mask_->size() != vertex_count_) {
    throw ParameterError("open mask has " + std::to_string(open_mask_->size()) + " entries, expected " +
                         std::to_string(vertex_count_));
  }
  for (auto& [u, v] : edges_) {
    if (u == v) throw ParameterError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (v >= vertex_count_) throw ParameterError("edge endpoint " + std::to_string(v) + " outside the ball");
    if (!is_open(u) || !is_open(v)) {
      throw ParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") touches a closed vertex");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::uint64_t Configuration::open_count() const {
  if (!open_mask_) return vertex_count_;
  return static_cast<std::uint64_t>(std::count(open_mask_->begin(), open_mask_->end(), true));
}

std::vector<std::uint64_t> Configuration::edge_counts_by_distance() const {
  std::vector<std::uint64_t> counts(params_.radius + 1, 0);
  for (const auto& [u, v] : edges_) ++counts[label_distance(params_.order, u, v)];
  return counts;
}

double edge_prob(double alpha, double beta, unsigned k) {
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be >= 0");
  if (!(beta > 0.0)) throw ParameterError("beta must be > 0");
  if (k == 0) throw ParameterError("edge lengths start at 1");
  return -std::expm1(-alpha * std::pow(beta, -static_cast<double>(k)));
}

Configuration sample_ball_naive(const PercolationParams& params, std::uint64_t capacity) {
  require_bond_model(params);
  checked_vertex_count(params, capacity);
  std::vector<Edge> edges;
  for (unsigned k = 1; k <= params.radius; ++k) {
    const double p = edge_prob(params.alpha, params.beta, k);
    if (p == 0.0) continue;
    Engine rng = make_stream(params.seed, params.replicate, k);
    const std::uint64_t count = pair_count(params.order, params.radius, k);
    for (std::uint64_t j = 0; j < count; ++j) {
      if (uniform01(rng) < p) edges.push_back(decode_pair_labels(params.order, params.radius, k, j));
    }
  }
  return Configuration(params, std::move(edges));
}

Configuration sample_ball_skip(const PercolationParams& params, std::uint64_t capacity) {
  require_bond_model(params);
  checked_vertex_count(params, capacity);
  std::vector<Edge> edges;
  for (unsigned k = 1; k <= params.radius; ++k) {
    const double scaled = params.alpha * std::pow(params.beta, -static_cast<double>(k));
    const double p = -std::expm1(-scaled);
    if (p == 0.0) continue;
    Engine rng = make_stream(params.seed, params.replicate, k);
    const std::uint64_t count = pair_count(params.order, params.radius, k);
    auto emit = [&](std::uint64_t j) { edges.push_back(decode_pair_labels(params.order, params.radius, k, j)); };

    if (p <= 0.5) {
      edges.reserve(edges.size() + static_cast<std::size_t>(static_cast<double>(count) * p * 1.1) + 16);
      geometric_skip(rng, count, std::log1p(-p), emit);
      continue;
    }
    // Dense class: jump over absent pairs, whose probability is exp(-scaled).
    const double absent = std::exp(-scaled);
    std::uint64_t next = 0;
    if (absent > 0.0) {
      geometric_skip(rng, count, std::log(p), [&](std::uint64_t gap_end) {
        for (; next < gap_end; ++next) emit(next);
        next = gap_end + 1;
      });
    }
    for (; next < count; ++next) emit(next);
  }
  return Configuration(params, std::move(edges));
}

Configuration sample_mixed(const PercolationParams& params, SamplerKind kind, std::uint64_t capacity) {
  const std::uint64_t count = checked_vertex_count(params, capacity);
  PercolationParams bond = params;
  bond.gamma = 0.0;
  Configuration full = kind == SamplerKind::naive ? sample_ball_naive(bond, capacity) : sample_ball_skip(bond, capacity);
  if (params.gamma == 0.0) return Configuration(params, std::vector<Edge>(full.edges().begin(), full.edges().end()));

  std::vector<bool> open(count);
  Engine rng = make_stream(params.seed, params.replicate, kMaskStream);
  for (std::uint64_t v = 0; v < count; ++v) open[v] = uniform01(rng) >= params.gamma;

  std::vector<Edge> kept;
  kept.reserve(full.edges().size());
  for (const auto& e : full.edges()) {
    if (open[e.first] && open[e.second]) kept.push_back(e);
  }
  return Configuration(params, std::move(kept), std::move(open));
}

Configuration sample(const PercolationParams& params, SamplerKind kind, std::uint64_t capacity) {
  if (params.gamma > 0.0) return sample_mixed(params, kind, capacity);
  return kind == SamplerKind::naive ? sample_ball_naive(params, capacity) : sample_ball_skip(params, capacity);
}

}  // namespace hierperc
