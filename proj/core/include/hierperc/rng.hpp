#pragma once

// Reproducible random streams.
//
// Every random decision in the library draws from a stream identified by
// (seed, replicate, stream id). The engine seed is
//   mix(mix(mix(seed) ^ replicate) ^ stream)
// where mix is the SplitMix64 finalizer applied after adding the golden-ratio
// increment. Distance class k samples edges from stream k, the open/closed
// vertex mask from stream 0, and tie-breaks from kTieBreakStream, so any one
// of them can be regenerated (or run concurrently) without the others.

#include <cstdint>
#include <random>

namespace hierperc {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t kMaskStream = 0;
inline constexpr std::uint64_t kTieBreakStream = 0xFFFF'FFFFull;
inline constexpr std::uint64_t kEmbeddingStream = 0x2'0000'0000ull;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) noexcept;

Engine make_stream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

/// Uniform on (0, 1] with 53 random bits; safe to take the logarithm of.
inline double uniform_open_closed(Engine& engine) { return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53; }

}  // namespace hierperc
