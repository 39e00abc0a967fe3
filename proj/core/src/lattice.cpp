#include "hierperc/lattice.hpp"

#include <limits>
#include <string>

#include "hierperc/errors.hpp"

namespace hierperc {

namespace {

void require_order(unsigned order) {
  if (order < 2) throw ParameterError("lattice order must be at least 2, got " + std::to_string(order));
}

}  // namespace

Address::Address(unsigned order, Label label) : order_(order), label_(label) { require_order(order); }

Address Address::from_digits(unsigned order, std::span<const unsigned> digits) {
  require_order(order);
  constexpr Label kMax = std::numeric_limits<Label>::max();
  Label value = 0;
  Label place = 1;
  bool place_overflowed = false;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const unsigned d = digits[i];
    if (d >= order) {
      throw ParameterError("digit " + std::to_string(d) + " at index " + std::to_string(i + 1) +
                           " is outside [0, " + std::to_string(order - 1) + "]");
    }
    if (d != 0) {
      if (place_overflowed || place > (kMax - value) / d) throw CapacityError("address label exceeds 64 bits");
      value += place * d;
    }
    if (i + 1 < digits.size()) {
      if (place > kMax / order) {
        place_overflowed = true;
      } else {
        place *= order;
      }
    }
  }
  return Address(order, value);
}

unsigned Address::digit(unsigned index) const {
  if (index == 0) throw ParameterError("digit indices start at 1");
  Label rest = label_;
  for (unsigned i = 1; i < index && rest != 0; ++i) rest /= order_;
  return static_cast<unsigned>(rest % order_);
}

std::vector<unsigned> Address::digits() const {
  std::vector<unsigned> out;
  for (Label rest = label_; rest != 0; rest /= order_) out.push_back(static_cast<unsigned>(rest % order_));
  return out;
}

unsigned label_distance(unsigned order, Label x, Label y) noexcept {
  unsigned d = 0;
  while (x != y) {
    x /= order;
    y /= order;
    ++d;
  }
  return d;
}

unsigned distance(const Address& x, const Address& y) {
  if (x.order() != y.order()) {
    throw ParameterError("distance between addresses of order " + std::to_string(x.order()) + " and " +
                         std::to_string(y.order()));
  }
  return label_distance(x.order(), x.label(), y.label());
}

Label label(const Address& x) noexcept { return x.label(); }

Address unlabel(std::int64_t n, unsigned order) {
  if (n < 0) throw ParameterError("labels are nonnegative, got " + std::to_string(n));
  return Address(order, static_cast<Label>(n));
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapacityError(std::to_string(base) + "^" + std::to_string(exponent) + " exceeds 64 bits");
    }
    result *= base;
  }
  return result;
}

Label ball_base(unsigned order, unsigned radius, Label label) {
  require_order(order);
  // A radius beyond the label width covers every representable label.
  std::uint64_t size = 0;
  try {
    size = checked_pow(order, radius);
  } catch (const CapacityError&) {
    return 0;
  }
  return label - label % size;
}

std::vector<Address> ball_members(const Ball& ball, std::uint64_t capacity) {
  require_order(ball.order);
  if (ball.anchor.order() != ball.order) throw ParameterError("ball anchor has a different order than the ball");
  const std::uint64_t size = checked_pow(ball.order, ball.radius);
  if (size > capacity) {
    throw CapacityError("ball of radius " + std::to_string(ball.radius) + " has " + std::to_string(size) +
                        " members, capacity is " + std::to_string(capacity));
  }
  const Label base = ball_base(ball.order, ball.radius, ball.anchor.label());
  if (base > std::numeric_limits<Label>::max() - (size - 1)) throw CapacityError("ball extends past 64-bit labels");
  std::vector<Address> out;
  out.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) out.emplace_back(ball.order, base + i);
  return out;
}

std::uint64_t shell_size(unsigned order, unsigned k) {
  require_order(order);
  if (k == 0) throw ParameterError("shell_size needs k >= 1");
  const std::uint64_t inner = checked_pow(order, k - 1);
  if (inner > std::numeric_limits<std::uint64_t>::max() / (order - 1)) throw CapacityError("shell size exceeds 64 bits");
  return (order - 1) * inner;
}

std::uint64_t pair_count(unsigned order, unsigned radius, unsigned k) {
  require_order(order);
  if (k == 0 || k > radius) {
    throw ParameterError("pair_count needs 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(radius));
  }
  // N^{n-k} balls, C(N,2) sub-ball pairs, N^{k-1} * N^{k-1} offset pairs.
  const std::uint64_t balls = checked_pow(order, radius - k);
  const std::uint64_t sub_pairs = std::uint64_t{order} * (order - 1) / 2;
  const std::uint64_t offsets = checked_pow(order, 2 * (k - 1));
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (offsets > kMax / sub_pairs || balls > kMax / (offsets * sub_pairs)) throw CapacityError("pair count exceeds 64 bits");
  return balls * sub_pairs * offsets;
}

std::pair<Label, Label> decode_pair_labels(unsigned order, unsigned radius, unsigned k, std::uint64_t index) {
  const std::uint64_t total = pair_count(order, radius, k);
  if (index >= total) {
    throw ParameterError("pair index " + std::to_string(index) + " out of range [0, " + std::to_string(total) + ")");
  }
  const std::uint64_t sub_size = checked_pow(order, k - 1);
  const std::uint64_t sub_pairs = std::uint64_t{order} * (order - 1) / 2;

  const std::uint64_t o2 = index % sub_size;
  index /= sub_size;
  const std::uint64_t o1 = index % sub_size;
  index /= sub_size;
  std::uint64_t pair = index % sub_pairs;
  const std::uint64_t ball = index / sub_pairs;

  // Lexicographic (i1, i2) with i1 < i2: i1 owns N-1-i1 consecutive indices.
  std::uint64_t i1 = 0;
  while (pair >= order - 1 - i1) {
    pair -= order - 1 - i1;
    ++i1;
  }
  const std::uint64_t i2 = i1 + 1 + pair;

  const std::uint64_t ball_size = sub_size * order;
  return {ball * ball_size + i1 * sub_size + o1, ball * ball_size + i2 * sub_size + o2};
}

std::pair<Address, Address> decode_pair(unsigned order, unsigned radius, unsigned k, std::uint64_t index) {
  const auto [u, v] = decode_pair_labels(order, radius, k, index);
  return {Address(order, u), Address(order, v)};
}

}  // namespace hierperc
