#pragma once

// Ultrametric address arithmetic on the hierarchical lattice of order N.
//
// A vertex is a finite-support sequence of base-N digits (x_1, x_2, ...). It is
// stored through its natural label sum_i x_i N^{i-1}, so labels are bounded by
// 64 bits. The distance between two vertices is the largest digit index at
// which they differ (0 for equal vertices).

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hierperc {

using Label = std::uint64_t;

/// Default cap on the number of vertices an enumeration may produce.
inline constexpr std::uint64_t kDefaultCapacity = std::uint64_t{1} << 26;

class Address {
 public:
  /// Throws ParameterError if order < 2.
  Address(unsigned order, Label label);

  /// Digits are x_1, x_2, ... (least significant first). Throws ParameterError
  /// on an out-of-range digit and CapacityError if the label overflows 64 bits.
  static Address from_digits(unsigned order, std::span<const unsigned> digits);

  unsigned order() const noexcept { return order_; }
  Label label() const noexcept { return label_; }

  /// Digit x_i for i >= 1; zero beyond the support.
  unsigned digit(unsigned index) const;

  /// Digits up to the last nonzero one (empty for the origin).
  std::vector<unsigned> digits() const;

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  unsigned order_;
  Label label_;
};

struct Ball {
  unsigned order;
  unsigned radius;
  Address anchor;
};

unsigned distance(const Address& x, const Address& y);

/// Distance on raw labels of a common order.
unsigned label_distance(unsigned order, Label x, Label y) noexcept;

Label label(const Address& x) noexcept;
Address unlabel(std::int64_t n, unsigned order);

/// N^e, throwing CapacityError when it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

/// Smallest label of the radius-r ball containing `label`.
Label ball_base(unsigned order, unsigned radius, Label label);

/// The N^r members of a ball, sorted by label. Throws CapacityError when
/// N^r exceeds `capacity`.
std::vector<Address> ball_members(const Ball& ball, std::uint64_t capacity = kDefaultCapacity);

/// Number of vertices at distance exactly k from any vertex: (N-1) N^{k-1}.
std::uint64_t shell_size(unsigned order, unsigned k);

/// Unordered pairs {x, y} inside B_n(0) with d(x, y) = k.
std::uint64_t pair_count(unsigned order, unsigned radius, unsigned k);

/// Bijection from [0, pair_count(N, n, k)) onto the distance-k pairs of B_n(0).
///
/// The index is decomposed as
///   j = ((ball * C(N,2) + sub_pair) * N^{k-1} + o1) * N^{k-1} + o2
/// where `ball` enumerates the N^{n-k} balls of radius k, `sub_pair` runs over
/// the sub-ball pairs i1 < i2 in lexicographic order, and o1, o2 are offsets
/// inside the two radius-(k-1) sub-balls. The returned labels are
///   u = ball N^k + i1 N^{k-1} + o1,   v = ball N^k + i2 N^{k-1} + o2,
/// so u < v always. This order is frozen: sampled configurations depend on it.
std::pair<Label, Label> decode_pair_labels(unsigned order, unsigned radius, unsigned k, std::uint64_t index);

std::pair<Address, Address> decode_pair(unsigned order, unsigned radius, unsigned k, std::uint64_t index);

}  // namespace hierperc
