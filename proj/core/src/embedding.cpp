#include "hierperc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hierperc/errors.hpp"

namespace hierperc::embedding {

namespace {

constexpr unsigned kMaxExtendedLength = 62;

std::uint64_t window_size(const DigitState& state) { return checked_pow(state.order(), state.length()); }

bool covers(const DigitState& state, std::int64_t z) {
  std::uint64_t size = 0;
  try {
    size = window_size(state);
  } catch (const CapacityError&) {
    return true;
  }
  const auto offset = static_cast<std::int64_t>(zero_position(state));
  return z >= -offset && z + offset < static_cast<std::int64_t>(std::min<std::uint64_t>(size, std::numeric_limits<std::int64_t>::max()));
}

}  // namespace

DigitState::DigitState(unsigned order, std::vector<unsigned> digits) : order_(order), digits_(std::move(digits)) {
  if (order < 2) throw ParameterError("order N must be at least 2");
  if (digits_.empty()) throw ParameterError("a digit state tracks at least one digit");
  for (unsigned d : digits_) {
    if (d >= order) throw ParameterError("digit " + std::to_string(d) + " is outside [0, N-1]");
  }
}

DigitState DigitState::random(unsigned order, unsigned length, Engine& rng) {
  if (order < 2) throw ParameterError("order N must be at least 2");
  if (length == 0) throw ParameterError("a digit state tracks at least one digit");
  std::uniform_int_distribution<unsigned> digit(0, order - 1);
  std::vector<unsigned> digits(length);
  for (auto& d : digits) d = digit(rng);
  return DigitState(order, std::move(digits));
}

void DigitState::extend(unsigned length, Engine& rng) {
  std::uniform_int_distribution<unsigned> digit(0, order_ - 1);
  while (digits_.size() < length) digits_.push_back(digit(rng));
}

DigitState kvn_step(const DigitState& state) {
  const auto digits = state.digits();
  if (std::all_of(digits.begin(), digits.end(), [&](unsigned d) { return d == state.order() - 1; })) {
    throw CarryOverflowError("carry leaves the tracked window; extend the digit state");
  }
  return kvn_step_truncated(state);
}

DigitState kvn_step_truncated(const DigitState& state) {
  std::vector<unsigned> digits(state.digits().begin(), state.digits().end());
  for (auto& d : digits) {
    if (d + 1 < state.order()) {
      ++d;
      break;
    }
    d = 0;
  }
  return DigitState(state.order(), std::move(digits));
}

std::uint64_t interval_index(const DigitState& state, unsigned m) {
  if (m > state.length()) throw ParameterError("interval level m exceeds the tracked length");
  std::uint64_t k = 0;
  for (unsigned r = 1; r <= m; ++r) k = k * state.order() + state.digit(r);
  return k;
}

std::uint64_t orbit_visits(const DigitState& start, unsigned m, std::uint64_t k, std::uint64_t steps) {
  if (m > start.length()) throw ParameterError("interval level m exceeds the tracked length");
  if (k >= checked_pow(start.order(), m)) throw ParameterError("interval index k is out of range for level m");
  try {
    if (steps > window_size(start)) throw ParameterError("steps exceed one odometer period N^L");
  } catch (const CapacityError&) {
    // N^L does not fit in 64 bits, so no representable step count exceeds it.
  }
  std::uint64_t visits = 0;
  DigitState state = start;
  for (std::uint64_t j = 0; j < steps; ++j) {
    if (interval_index(state, m) == k) ++visits;
    if (j + 1 < steps) state = kvn_step_truncated(state);
  }
  return visits;
}

double orbit_frequency(const DigitState& start, unsigned m, std::uint64_t k, std::uint64_t steps) {
  if (steps == 0) throw ParameterError("orbit_frequency needs at least one step");
  return static_cast<double>(orbit_visits(start, m, k, steps)) / static_cast<double>(steps);
}

std::uint64_t zero_position(const DigitState& state) {
  std::uint64_t position = 0;
  std::uint64_t place = 1;
  for (unsigned r = 1; r <= state.length(); ++r) {
    position += state.digit(r) * place;
    if (r < state.length()) place *= state.order();
  }
  return position;
}

Address address_at(const DigitState& state, std::int64_t z) {
  if (!covers(state, z)) {
    throw WindowError("position " + std::to_string(z) + " lies outside the tracked ball; extend the digit state");
  }
  std::uint64_t offset = static_cast<std::uint64_t>(z + static_cast<std::int64_t>(zero_position(state)));
  const unsigned n = state.order();
  Label label = 0;
  Label place = 1;
  for (unsigned r = 1; r <= state.length(); ++r) {
    const auto w = static_cast<unsigned>(offset % n);
    offset /= n;
    label += ((w + n - state.digit(r)) % n) * place;
    if (r < state.length()) place *= n;
  }
  return Address(n, label);
}

StationarityReport stationarity_check(unsigned order, unsigned length, std::uint64_t trials,
                                      std::span<const std::uint64_t> lags, std::span<const std::int64_t> base_points,
                                      std::uint64_t seed) {
  if (trials == 0) throw ParameterError("stationarity_check needs at least one trial");
  if (base_points.empty() || lags.empty()) throw ParameterError("stationarity_check needs lags and base points");
  StationarityReport report;
  report.order = order;
  report.length = length;
  report.trials = trials;

  // counts[lag][base][d]
  std::vector<std::vector<std::vector<std::uint64_t>>> counts(
      lags.size(), std::vector<std::vector<std::uint64_t>>(base_points.size()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    Engine rng = make_stream(seed, t, kEmbeddingStream);
    DigitState state = DigitState::random(order, length, rng);
    for (std::size_t li = 0; li < lags.size(); ++li) {
      for (std::size_t bi = 0; bi < base_points.size(); ++bi) {
        const std::int64_t z = base_points[bi];
        const std::int64_t z2 = z + static_cast<std::int64_t>(lags[li]);
        while (!covers(state, z) || !covers(state, z2)) {
          if (state.length() >= kMaxExtendedLength) throw WindowError("positions too far apart to embed");
          state.extend(state.length() + 1, rng);
        }
        const unsigned d = distance(address_at(state, z), address_at(state, z2));
        auto& cell = counts[li][bi];
        if (cell.size() <= d) cell.resize(d + 1, 0);
        ++cell[d];
      }
    }
  }

  const auto total = static_cast<double>(trials);
  for (std::size_t li = 0; li < lags.size(); ++li) {
    std::size_t width = 0;
    for (const auto& cell : counts[li]) width = std::max(width, cell.size());
    std::vector<std::vector<double>> laws;
    for (std::size_t bi = 0; bi < base_points.size(); ++bi) {
      std::vector<double> law(width, 0.0);
      for (std::size_t d = 0; d < counts[li][bi].size(); ++d) law[d] = static_cast<double>(counts[li][bi][d]) / total;
      report.rows.push_back({lags[li], base_points[bi], law});
      laws.push_back(std::move(law));
    }
    for (std::size_t a = 0; a < laws.size(); ++a) {
      for (std::size_t b = a + 1; b < laws.size(); ++b) {
        double tv = 0.0;
        for (std::size_t d = 0; d < width; ++d) {
          const double diff = std::abs(laws[a][d] - laws[b][d]);
          tv += 0.5 * diff;
          const double pooled = 0.5 * (laws[a][d] + laws[b][d]);
          if (diff > 3.0 * std::sqrt(pooled * (1.0 - pooled) * 2.0 / total)) report.within_three_sigma = false;
        }
        report.max_total_variation = std::max(report.max_total_variation, tv);
      }
    }
  }
  return report;
}

StationarityReport stationarity_check(unsigned order, unsigned length, std::uint64_t trials, std::uint64_t seed) {
  if (length < 1) throw ParameterError("stationarity_check needs L >= 1");
  const std::uint64_t top = checked_pow(order, length - 1);
  std::vector<std::uint64_t> lags{1, 2, 3, order, std::uint64_t{order} + 1, top / 2 + 1, top};
  std::erase_if(lags, [&](std::uint64_t h) { return h > top; });
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  const auto t = static_cast<std::int64_t>(top);
  const std::vector<std::int64_t> bases{-t, -1, 0, 1, t + 1};
  return stationarity_check(order, length, trials, lags, bases, seed);
}

}  // namespace hierperc::embedding
