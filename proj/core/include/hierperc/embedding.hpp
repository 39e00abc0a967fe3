#pragma once

// Stationary embedding of the hierarchical lattice into the integers.
//
// A digit state gamma_1..gamma_L fixes how the balls around the origin sit on
// Z: B_{r-1}(0) is the (gamma_r + 1)-st radius-(r-1) block of B_r(0), counted
// from the left. Shifting Z by one corresponds to the Kakutani-von Neumann
// odometer (add one to gamma_1 with carry to the right).
//
// Position convention: B_L(0) occupies the integers
//   [-zero_position, N^L - 1 - zero_position].
// The integer z at window offset w = z + zero_position (base-N digits w_r)
// carries the vertex with digits x_r = (w_r - gamma_r) mod N, r = 1..L.
//
// N-adic intervals: the state lies in I_{m,k} when
//   k = sum_{r=1}^{m} gamma_r N^{m-r}   (gamma_1 most significant).

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "hierperc/lattice.hpp"
#include "hierperc/rng.hpp"

namespace hierperc::embedding {

/// kvn_step on a state whose digits are all N-1: the carry leaves the tracked window.
class CarryOverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An integer position outside the tracked window.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DigitState {
 public:
  /// Throws ParameterError for N < 2, an empty digit list or an out-of-range digit.
  DigitState(unsigned order, std::vector<unsigned> digits);

  /// L i.i.d. uniform digits (Lebesgue measure on the first L digits).
  static DigitState random(unsigned order, unsigned length, Engine& rng);

  unsigned order() const noexcept { return order_; }
  unsigned length() const noexcept { return static_cast<unsigned>(digits_.size()); }
  std::span<const unsigned> digits() const noexcept { return digits_; }
  /// gamma_r for r = 1..L.
  unsigned digit(unsigned r) const { return digits_.at(r - 1); }

  /// Appends i.i.d. uniform digits until the state has `length` digits.
  void extend(unsigned length, Engine& rng);

  friend bool operator==(const DigitState&, const DigitState&) = default;

 private:
  unsigned order_;
  std::vector<unsigned> digits_;
};

/// Y = min{n : gamma_n != N-1}; digits before Y become 0 and digit Y gains one.
/// Throws CarryOverflowError when every tracked digit is N-1.
DigitState kvn_step(const DigitState& state);

/// The odometer on the first L digits: an all-(N-1) state wraps to all zeros.
/// This is the exact action of the transformation on the tracked digits.
DigitState kvn_step_truncated(const DigitState& state);

/// Index k of the level-m N-adic interval containing the state.
std::uint64_t interval_index(const DigitState& state, unsigned m);

/// Number of j in [0, steps) with S^j(start) in I_{m,k}. Requires m <= L and
/// steps <= N^L; over a full period the count is exactly N^{L-m}.
std::uint64_t orbit_visits(const DigitState& start, unsigned m, std::uint64_t k, std::uint64_t steps);

/// orbit_visits / steps.
double orbit_frequency(const DigitState& start, unsigned m, std::uint64_t k, std::uint64_t steps);

/// sum_{r=1}^{L} gamma_r N^{r-1}: offset of vertex 0 inside the interval of B_L(0).
std::uint64_t zero_position(const DigitState& state);

/// The vertex placed at integer z. Throws WindowError outside
/// [-zero_position, N^L - 1 - zero_position].
Address address_at(const DigitState& state, std::int64_t z);

struct StationarityRow {
  std::uint64_t lag = 0;
  std::int64_t base_point = 0;
  std::vector<double> distance_law;  ///< index d = 0..L_max: empirical P(d(z, z+h) = d)
};

struct StationarityReport {
  unsigned order = 0;
  unsigned length = 0;
  std::uint64_t trials = 0;
  std::vector<StationarityRow> rows;
  double max_total_variation = 0.0;  ///< over lags, between base points
  /// Every pair of base points agrees cell by cell within 3 two-sample standard errors.
  bool within_three_sigma = true;
};

/// For each lag h in `lags` and base point z in `base_points`, samples
/// d(address_at(z), address_at(z + h)) over `trials` independent uniform digit
/// states of length L (extended with further uniform digits when z or z + h
/// falls outside the window) and compares the laws across base points.
StationarityReport stationarity_check(unsigned order, unsigned length, std::uint64_t trials,
                                      std::span<const std::uint64_t> lags, std::span<const std::int64_t> base_points,
                                      std::uint64_t seed);

/// Default lags {1, 2, 3, N, N + 1, N^{L-1}/2 + 1, N^{L-1}} (those not above
/// N^{L-1}) and base points {-N^{L-1}, -1, 0, 1, N^{L-1} + 1}.
StationarityReport stationarity_check(unsigned order, unsigned length, std::uint64_t trials, std::uint64_t seed);

}  // namespace hierperc::embedding
