#include "hierperc/rng.hpp"

namespace hierperc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ replicate) ^ stream);
}

Engine make_stream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) {
  return Engine(derive_seed(seed, replicate, stream));
}

}  // namespace hierperc
