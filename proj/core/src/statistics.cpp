#include "hierperc/statistics.hpp"

#include <cmath>

namespace hierperc {

Estimate estimate(std::span<const double> samples) {
  Estimate out;
  out.count = samples.size();
  if (samples.empty()) return out;
  // Shifting by the first sample keeps the mean of constant data exact.
  const double shift = samples.front();
  double sum = 0.0;
  for (double x : samples) sum += x - shift;
  out.mean = shift + sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return out;
  double squares = 0.0;
  for (double x : samples) {
    const double d = (x - shift) - (out.mean - shift);
    squares += d * d;
  }
  const double variance = squares / static_cast<double>(samples.size() - 1);
  out.std_error = std::sqrt(variance / static_cast<double>(samples.size()));
  return out;
}

bool not_below(const Estimate& a, const Estimate& b, double sigmas) {
  return a.mean >= b.mean - sigmas * std::hypot(a.std_error, b.std_error);
}

bool consistent(const Estimate& a, const Estimate& b, double sigmas) {
  return std::abs(a.mean - b.mean) <= sigmas * std::hypot(a.std_error, b.std_error);
}

}  // namespace hierperc
