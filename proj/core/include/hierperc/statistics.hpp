#pragma once

#include <cstdint>
#include <span>

namespace hierperc {

/// Sample mean with standard error = sample standard deviation / sqrt(count).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
};

Estimate estimate(std::span<const double> samples);

/// True when `a` is not below `b` by more than `sigmas` combined standard errors.
bool not_below(const Estimate& a, const Estimate& b, double sigmas = 3.0);

/// |a - b| <= sigmas * sqrt(se_a^2 + se_b^2).
bool consistent(const Estimate& a, const Estimate& b, double sigmas = 3.0);

}  // namespace hierperc
