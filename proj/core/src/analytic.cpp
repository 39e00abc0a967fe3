#include "hierperc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "hierperc/errors.hpp"

namespace hierperc::analytic {

namespace {

constexpr double kRoundingSlack = 1e-12;

void require_order(unsigned order) {
  if (order < 2) throw ParameterError("order N must be at least 2");
}

void require_rates(double alpha, double beta) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be finite and >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
}

double log_choose(std::uint64_t m, std::uint64_t i) {
  const auto md = static_cast<double>(m);
  const auto id = static_cast<double>(i);
  return std::lgamma(md + 1.0) - std::lgamma(id + 1.0) - std::lgamma(md - id + 1.0);
}

bool within(double value, double bound) { return value <= bound * (1.0 + kRoundingSlack) + 1e-300; }

}  // namespace

double shell_edge_prob(unsigned order, double alpha, double beta, unsigned k) {
  require_order(order);
  require_rates(alpha, beta);
  if (k == 0) throw ParameterError("shell index k starts at 1");
  const double n = order;
  return -std::expm1(-alpha * (n - 1.0) / n * std::pow(n / beta, static_cast<double>(k)));
}

double shell_edge_prob_partial_sum(unsigned order, double alpha, double beta, unsigned k_max) {
  double sum = 0.0;
  for (unsigned k = 1; k <= k_max; ++k) sum += shell_edge_prob(order, alpha, beta, k);
  return sum;
}

double escape_series(unsigned order, double beta, unsigned j, std::optional<unsigned> horizon) {
  require_order(order);
  require_rates(0.0, beta);
  const double n = order;
  if (!horizon) {
    if (beta <= n) throw DivergenceError("escape series diverges for beta <= N; the escape probability is 1");
    return (n - 1.0) / (beta - n) * std::pow(n / beta, static_cast<double>(j));
  }
  if (*horizon < j) throw ParameterError("horizon must be at least j");
  double sum = 0.0;
  for (unsigned k = j + 1; k <= *horizon; ++k) sum += (n - 1.0) / n * std::pow(n / beta, static_cast<double>(k));
  return sum;
}

double ball_escape_prob(unsigned order, double alpha, double beta, unsigned j, std::optional<unsigned> horizon) {
  require_rates(alpha, beta);
  const double series = escape_series(order, beta, j, horizon);
  return -std::expm1(-alpha * std::pow(static_cast<double>(order), static_cast<double>(j)) * series);
}

std::optional<double> expected_degree(unsigned order, double alpha, double beta) {
  require_order(order);
  require_rates(alpha, beta);
  const double n = order;
  if (beta <= n) return std::nullopt;
  if (alpha == 0.0) return 0.0;

  double sum = 0.0;
  unsigned k = 1;
  for (; alpha * std::pow(beta, -static_cast<double>(k)) >= 1e-3; ++k) {
    sum += (n - 1.0) * std::pow(n, static_cast<double>(k) - 1.0) * -std::expm1(-alpha * std::pow(beta, -static_cast<double>(k)));
  }
  // Remainder over k >= k0: sum_m (-1)^{m+1} alpha^m / m! (N-1)/N r_m^{k0} / (1 - r_m), r_m = N / beta^m.
  const auto k0 = static_cast<double>(k);
  double tail = 0.0;
  double coefficient = 1.0;  // alpha^m / m!
  for (unsigned m = 1;; ++m) {
    coefficient *= alpha / m;
    const double r = n / std::pow(beta, static_cast<double>(m));
    const double term = coefficient * (n - 1.0) / n * std::pow(r, k0) / (1.0 - r);
    if (term < 1e-13 && m > 1) break;
    tail += (m % 2 == 1) ? term : -term;
  }
  return sum + tail;
}

double alpha_c_lower_bound(unsigned order, double beta) {
  require_order(order);
  require_rates(0.0, beta);
  const double n = order;
  return beta > n ? (beta - n) / (n - 1.0) : 0.0;
}

double cond_escape_prob(double cluster_size, unsigned i, unsigned order, double alpha, double beta,
                        std::optional<unsigned> horizon) {
  require_rates(alpha, beta);
  if (!(cluster_size >= 0.0)) throw ParameterError("cluster size must be >= 0");
  if (cluster_size == 0.0) return 0.0;
  return -std::expm1(-alpha * cluster_size * escape_series(order, beta, i, horizon));
}

EtaCheck validate_eta(unsigned order, double beta, unsigned block, double eta) {
  require_order(order);
  require_rates(0.0, beta);
  const double n = order;

  // (N^K - 1)^{1/K} > sqrt(beta)  <=>  beta^K < (N^K - 1)^2, compared exactly
  // while N^K - 1 is an exact double.
  auto nonempty = [&](unsigned k) {
    const double nk = std::pow(n, static_cast<double>(k));
    if (nk < 0x1.0p26) return std::pow(beta, static_cast<double>(k)) < (nk - 1.0) * (nk - 1.0);
    return static_cast<double>(k) * std::log(beta) < 2.0 * (static_cast<double>(k) * std::log(n) + std::log1p(-1.0 / nk));
  };
  auto upper_ok = [&](unsigned k) {
    const double nk = std::pow(n, static_cast<double>(k));
    if (nk < 0x1.0p26) return std::pow(eta, static_cast<double>(k)) <= nk - 1.0;
    return static_cast<double>(k) * std::log(eta) <= static_cast<double>(k) * std::log(n) + std::log1p(-1.0 / nk);
  };

  EtaCheck out;
  if (beta < n * n) {
    // The upper end increases to N, so some K works exactly when sqrt(beta) < N.
    for (unsigned k = 1; k <= 4096; ++k) {
      if (nonempty(k)) {
        out.smallest_block = k;
        break;
      }
    }
  }
  if (block >= 1) {
    out.range_nonempty = nonempty(block);
    out.valid = eta > 0.0 && eta * eta > beta && upper_ok(block);
  }
  return out;
}

double epsilon_n(double alpha, double beta, unsigned block, double eta, unsigned n) {
  require_rates(alpha, beta);
  const double k = block;
  const double exponent = -k * std::log(beta) + static_cast<double>(n) * k * std::log(eta * eta / beta);
  return std::exp(-alpha * std::exp(exponent));
}

double epsilon_rate(double alpha, double beta, unsigned block, double eta) {
  require_rates(alpha, beta);
  return std::pow(beta / (eta * eta), alpha * block * std::pow(beta, -static_cast<double>(block)));
}

double binom_tail(std::uint64_t m, double p, double q, std::int64_t threshold) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) throw ParameterError("binomial probabilities must lie in [0, 1]");
  if (threshold <= 0) return 1.0;
  if (static_cast<std::uint64_t>(threshold) > m) return 0.0;
  if (p == 0.0) return 0.0;
  if (q == 0.0) return 1.0;

  const double log_p = std::log(p);
  const double log_q = std::log(q);
  const auto first = static_cast<std::uint64_t>(threshold);
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(m - first + 1);
  for (std::uint64_t i = first; i <= m; ++i) {
    const double term = log_choose(m, i) + static_cast<double>(i) * log_p + static_cast<double>(m - i) * log_q;
    logs.push_back(term);
    peak = std::max(peak, term);
  }
  double scaled = 0.0;
  for (double term : logs) scaled += std::exp(term - peak);
  return std::min(1.0, std::exp(peak) * scaled);
}

double binom_tail(std::uint64_t m, double p, std::int64_t threshold) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("binomial probability must lie in [0, 1]");
  return binom_tail(m, p, 1.0 - p, threshold);
}

bool RecursionTrace::contraction_holds() const {
  return std::all_of(contraction_ok.begin(), contraction_ok.end(), [](bool ok) { return ok; });
}

bool RecursionTrace::certified() const {
  return certificate_preconditions &&
         std::all_of(certificate_ok.begin(), certificate_ok.end(), [](bool ok) { return ok; });
}

namespace {

RecursionTrace run_recursion(unsigned order, unsigned block, double eta, double alpha, double beta, unsigned n_max,
                             bool with_t) {
  require_order(order);
  require_rates(alpha, beta);
  if (!validate_eta(order, beta, block, eta).valid) {
    throw ParameterError("eta must satisfy sqrt(beta) < eta <= (N^K - 1)^{1/K}");
  }
  const double balls = std::pow(static_cast<double>(order), static_cast<double>(block));
  if (balls > 1e6) throw CapacityError("N^K is too large for exact binomial sums");
  const auto m = static_cast<std::uint64_t>(balls);

  RecursionTrace trace;
  trace.order = order;
  trace.block = block;
  trace.eta = eta;
  trace.alpha = alpha;
  trace.beta = beta;
  trace.pair_bound = balls * (balls - 1.0) / 2.0;
  trace.contraction_rate = 1.0 / (4.0 * trace.pair_bound);

  trace.s.push_back(1.0);
  trace.xi.push_back(0.0);
  trace.contraction_ok.push_back(true);
  if (with_t) {
    trace.t.push_back(1.0);
    trace.comparison_ok.push_back(true);
  }
  for (unsigned n = 0; n <= n_max; ++n) {
    trace.epsilon.push_back(epsilon_n(alpha, beta, block, eta, n));
    if (n == n_max) break;

    const double s = trace.s[n];
    const double xi = trace.xi[n];
    const double eps = trace.epsilon[n];
    const double success = s * (1.0 - eps);
    const double failure = xi + s * eps;  // 1 - s(1 - eps) without cancellation

    const auto threshold = static_cast<std::int64_t>(m) - 1;
    const double s_next = binom_tail(m, success, failure, threshold);
    const double xi_next = binom_tail(m, failure, success, 2);  // at least two bad sub-balls
    trace.s.push_back(s_next);
    trace.xi.push_back(xi_next);
    trace.contraction_ok.push_back(within(xi_next, trace.pair_bound * (xi + eps) * (xi + eps)));

    if (with_t) {
      const double factor = binom_tail(m - 1, success, failure, threshold - 1);
      trace.t.push_back(trace.t[n] * factor);
      trace.comparison_ok.push_back(factor >= s_next * (1.0 - kRoundingSlack));
    }
  }

  const double gamma = trace.contraction_rate;
  bool preconditions = n_max >= 1 && within(trace.xi[1], gamma * gamma);
  for (unsigned n = 0; n < n_max && preconditions; ++n) {
    preconditions = within(trace.epsilon[n], std::pow(gamma, static_cast<double>(n)));
  }
  trace.certificate_preconditions = preconditions;
  for (unsigned n = 0; n <= n_max; ++n) {
    trace.certificate_ok.push_back(within(trace.xi[n], std::pow(gamma, static_cast<double>(n) + 1.0)));
  }
  return trace;
}

}  // namespace

RecursionTrace iterate_s(unsigned order, unsigned block, double eta, double alpha, double beta, unsigned n_max) {
  return run_recursion(order, block, eta, alpha, beta, n_max, false);
}

RecursionTrace iterate_t(unsigned order, unsigned block, double eta, double alpha, double beta, unsigned n_max) {
  return run_recursion(order, block, eta, alpha, beta, n_max, true);
}

double binomial_map(std::uint64_t m, double p, double x) {
  if (m < 2) throw ParameterError("G_p needs m >= 2");
  const double success = p * x;
  return binom_tail(m, success, 1.0 - success, static_cast<std::int64_t>(m) - 1);
}

double fixed_point_G(std::uint64_t m, double p) {
  if (m < 2) throw ParameterError("fixed_point_G needs m >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  if (p == 1.0) return 1.0;
  if (p == 0.0) return 0.0;

  double u = 1.0;
  for (int it = 0; it < 10'000'000; ++it) {
    const double next = binomial_map(m, p, u);
    const bool settled = u - next <= 1e-15;
    u = next;
    if (settled || u < 1e-300) break;
  }
  if (u < 1e-12) return 0.0;

  // u sits at or just above the largest root of f(x) = G_p(x) - x.
  auto f = [&](double x) { return binomial_map(m, p, x) - x; };
  double hi = u;
  if (f(hi) >= 0.0) return hi;
  double step = 1e-12;
  double lo = hi - step;
  while (lo > 0.0 && f(lo) < 0.0) {
    step *= 2.0;
    lo = hi - step;
  }
  if (lo <= 0.0) return 0.0;
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (a + b);
}

double giant_fraction(double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
  if (lambda <= 1.0) return 0.0;
  if (lambda > 700.0) return -std::expm1(-lambda);
  auto f = [lambda](double rho) { return -std::expm1(-lambda * rho) - rho; };
  // 1 - e^{-x} >= x - x^2/2 makes f positive at (lambda - 1)/lambda^2.
  const double lo = (lambda - 1.0) / (lambda * lambda);
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, 1.0, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (a + b);
}

CouplingParams gamma_for_epsilon(unsigned order, double alpha, double beta, double epsilon) {
  require_order(order);
  require_rates(alpha, beta);
  const double n = order;
  if (beta <= n) throw ParameterError("the Poisson coupling needs beta > N");
  if (!(alpha > 0.0)) throw ParameterError("the Poisson coupling needs alpha > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ParameterError("epsilon must be finite and >= 0");
  CouplingParams out;
  out.epsilon = epsilon;
  out.lambda1 = alpha * (n - 1.0) / (beta - n);
  out.lambda2 = out.lambda1 * (1.0 + epsilon);
  const double numerator = std::exp(-out.lambda1) * -std::expm1(-(out.lambda2 - out.lambda1));
  out.gamma = numerator / -std::expm1(-out.lambda2);
  return out;
}

CouplingTails coupling_tails(const CouplingParams& coupling, unsigned k) {
  // P(Poisson(l) > k) = P(k + 1, l), the regularized lower incomplete gamma function.
  const auto kk = static_cast<double>(k) + 1.0;
  const double y2_tail = boost::math::gamma_p(kk, coupling.lambda2);
  const double z1_tail = boost::math::gamma_p(kk, coupling.lambda1);
  const double open = 1.0 - coupling.gamma;
  const double z2_zero = coupling.gamma + open * std::exp(-coupling.lambda2);

  CouplingTails out;
  out.y2 = y2_tail / -std::expm1(-coupling.lambda2);
  out.z1 = z1_tail / -std::expm1(-coupling.lambda1);
  out.z2 = open * y2_tail / (1.0 - z2_zero);
  return out;
}

bool dominance_check(unsigned order, double alpha, double beta, double epsilon, unsigned k_max) {
  const CouplingParams coupling = gamma_for_epsilon(order, alpha, beta, epsilon);
  for (unsigned k = 1; k <= k_max; ++k) {
    const CouplingTails tails = coupling_tails(coupling, k);
    if (!(tails.z2 > tails.z1)) return false;
  }
  return true;
}

double subcritical_b(unsigned order, double alpha, double beta, double epsilon) {
  require_order(order);
  require_rates(alpha, beta);
  const double n = order;
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in [0, 1)");
  const double shrunk = beta * (1.0 - epsilon);
  if (!(shrunk > n)) throw ParameterError("subcritical_b needs beta (1 - eps) > N");
  return alpha * epsilon * (n - 1.0) * n / ((shrunk - n) * (beta - n));
}

double subcritical_b_series(unsigned order, double alpha, double beta, double epsilon) {
  require_order(order);
  require_rates(alpha, beta);
  const double n = order;
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in [0, 1)");
  if (!(beta * (1.0 - epsilon) > n)) throw ParameterError("subcritical_b_series needs beta (1 - eps) > N");
  if (alpha == 0.0 || epsilon == 0.0) return 0.0;

  // Terms are handled in logs: N^i and beta^{-i} leave double range long
  // before the ratio N / (beta (1 - eps)) has shrunk the tail.
  const double log_ratio = std::log(n) - std::log(beta) - std::log1p(-epsilon);
  const double log_prefactor = std::log((n - 1.0) / n);
  double sum = 0.0;
  for (unsigned i = 1; i < 10'000'000; ++i) {
    const double di = i;
    const double log_x = std::log(alpha) - di * std::log(beta) + std::log(std::expm1(-di * std::log1p(-epsilon)));
    const double log_hit = log_x < -30.0 ? log_x : std::log(-std::expm1(-std::exp(log_x)));
    sum += std::exp(log_prefactor + di * std::log(n) + log_hit);
    // Remaining terms are below alpha (N-1)/N r^j for j > i.
    const double log_tail = std::log(alpha) + log_prefactor + (di + 1.0) * log_ratio - std::log(-std::expm1(log_ratio));
    if (log_tail < std::log(1e-13)) break;
  }
  return sum;
}

std::optional<double> expected_cluster_bound(double a, double b) {
  if (!(a >= 1.0)) throw ParameterError("a = E|C(0)| is at least 1");
  if (!(b >= 0.0)) throw ParameterError("b must be >= 0");
  if (a * b >= 1.0) return std::nullopt;
  return a / (1.0 - a * b);
}

}  // namespace hierperc::analytic
