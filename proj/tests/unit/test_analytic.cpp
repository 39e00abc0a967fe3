#include <doctest.h>

#include <cmath>

#include "hierperc/analytic.hpp"
#include "hierperc/errors.hpp"
#include "oracles.hpp"

using namespace hierperc;
using namespace hierperc::analytic;

namespace {

double direct_tail(std::uint64_t m, double p, std::int64_t t) {
  double sum = 0.0;
  for (std::int64_t j = std::max<std::int64_t>(t, 0); j <= static_cast<std::int64_t>(m); ++j) {
    sum += oracle::binomial_pmf(m, p, static_cast<std::uint64_t>(j));
  }
  return sum;
}

}  // namespace

TEST_CASE("shell edge probability") {
  CHECK(shell_edge_prob(3, 0.0, 5.0, 2) == 0.0);
  for (unsigned k = 1; k < 20; ++k) {
    REQUIRE(shell_edge_prob(3, 1.7, 3.0, k) == doctest::Approx(1 - std::exp(-1.7 * 2.0 / 3.0)).epsilon(1e-13));
  }
  CHECK(shell_edge_prob(2, 1.0, 3.0, 4) == doctest::Approx(1 - std::exp(-8.0 / 81.0)).epsilon(1e-14));
  // Partial sums grow without bound at beta <= N and settle for beta > N.
  CHECK(shell_edge_prob_partial_sum(2, 0.5, 2.0, 400) > 50.0);
  CHECK(shell_edge_prob_partial_sum(2, 0.5, 1.5, 400) > 150.0);
  const double a = shell_edge_prob_partial_sum(2, 0.5, 3.0, 200);
  const double b = shell_edge_prob_partial_sum(2, 0.5, 3.0, 400);
  CHECK(b - a < 1e-12);
}

TEST_CASE("ball escape probability") {
  for (unsigned order : {2u, 3u, 4u}) {
    const double beta = double(order) * order;
    for (unsigned j = 0; j <= 10; ++j) {
      REQUIRE(ball_escape_prob(order, 1.3, beta, j, kInfinite) ==
              doctest::Approx(1 - std::exp(-1.3 / order)).epsilon(1e-12));
    }
  }
  CHECK(ball_escape_prob(2, 0.0, 3.0, 2, kInfinite) == 0.0);
  CHECK(ball_escape_prob(2, 1.0, 4.0, 1, kInfinite) == doctest::Approx(1 - std::exp(-0.5)).epsilon(1e-14));
  CHECK(ball_escape_prob(3, 2.0, 5.0, 1, kInfinite) ==
        doctest::Approx(1 - std::exp(-2.0 * 9.0 * 2.0 / (5.0 * 2.0))).epsilon(1e-13));
  CHECK_THROWS_AS(ball_escape_prob(2, 1.0, 2.0, 1, kInfinite), DivergenceError);
  CHECK_THROWS_AS(escape_series(2, 1.5, 0, kInfinite), DivergenceError);
  CHECK_NOTHROW(ball_escape_prob(2, 1.0, 2.0, 1, 8u));
  CHECK_THROWS_AS(escape_series(2, 3.0, 5, 4u), ParameterError);
  double direct = 0.0;
  for (unsigned k = 3; k <= 9; ++k) direct += 2.0 * std::pow(3.0, k - 1) / std::pow(5.0, k);
  CHECK(escape_series(3, 5.0, 2, 9u) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(escape_series(3, 5.0, 2, 2u) == 0.0);
}

TEST_CASE("expected degree") {
  CHECK(*expected_degree(2, 0.0, 3.0) == 0.0);
  CHECK_FALSE(expected_degree(2, 1.0, 2.0).has_value());
  CHECK(*expected_degree(2, 0.5, 3.0) < 1.0);
  for (unsigned order : {2u, 3u, 5u}) {
    for (double alpha : {0.01, 0.5, 2.0, 30.0}) {
      for (double factor : {1.05, 1.5, 2.0, 4.0}) {
        const double beta = order * factor;
        const double value = *expected_degree(order, alpha, beta);
        double direct = 0.0;
        for (unsigned k = 1; k < 3000; ++k) {
          const double term = (order - 1) * std::pow(double(order), double(k) - 1) * -std::expm1(-alpha / std::pow(beta, k));
          direct += term;
          if (term < 1e-18 * direct) break;
        }
        REQUIRE(value == doctest::Approx(direct).epsilon(1e-9));
        REQUIRE(value < alpha * (order - 1) / (beta - order));
      }
    }
  }
}

TEST_CASE("lower bound on the critical alpha") {
  CHECK(alpha_c_lower_bound(2, 3.0) == 1.0);
  CHECK(alpha_c_lower_bound(3, 8.0) == 2.5);
  CHECK(alpha_c_lower_bound(2, 2.0 + 1e-12) < 1e-11);
  CHECK(alpha_c_lower_bound(2, 1.5) == 0.0);
}

TEST_CASE("conditional escape probability") {
  CHECK(cond_escape_prob(0.0, 3, 2, 1.0, 3.0) == 0.0);
  CHECK(cond_escape_prob(2.0, 0, 2, 1.0, 3.0) == doctest::Approx(1 - std::exp(-2.0)).epsilon(1e-14));
  for (unsigned i = 1; i <= 10; ++i) {
    const double size = 2.0 * std::pow(1.5, i);
    REQUIRE(std::abs(cond_escape_prob(size, i, 2, 1.0, 3.0) - (1 - std::exp(-2.0))) < 1e-12);
  }
}

TEST_CASE("eta validation") {
  const auto ok = validate_eta(2, 3.0, 3, 1.9);
  CHECK(ok.valid);
  CHECK(ok.range_nonempty);
  CHECK(ok.smallest_block == 3u);
  const auto empty = validate_eta(2, 3.0, 2, 1.8);
  CHECK_FALSE(empty.valid);
  CHECK_FALSE(empty.range_nonempty);
  CHECK_FALSE(validate_eta(2, 3.0, 3, 1.92).valid);
  CHECK_FALSE(validate_eta(2, 3.0, 3, 1.7).valid);
  for (unsigned k = 1; k < 40; ++k) REQUIRE_FALSE(validate_eta(2, 4.0, k, 2.0).valid);
  CHECK_FALSE(validate_eta(2, 4.0, 5, 2.0).smallest_block.has_value());
}

TEST_CASE("epsilon sequence") {
  CHECK(epsilon_n(100.0, 3.0, 3, 1.9, 1) == doctest::Approx(std::exp(-(100.0 / 27.0) * std::pow(3.61 / 3.0, 3))).epsilon(1e-14));
  const double delta = epsilon_rate(100.0, 3.0, 3, 1.9);
  double previous = 1.0;
  for (unsigned n = 0; n < 40; ++n) {
    const double e = epsilon_n(100.0, 3.0, 3, 1.9, n);
    REQUIRE(e <= previous);
    REQUIRE(e <= std::pow(delta, n) * (1 + 1e-12));
    previous = e;
  }
  CHECK(epsilon_n(0.0, 3.0, 3, 1.9, 4) == 1.0);
}

TEST_CASE("binomial tails") {
  CHECK(binom_tail(4, 0.5, 3) == doctest::Approx(5.0 / 16.0).epsilon(1e-15));
  CHECK(binom_tail(9, 1.0, 9) == 1.0);
  CHECK(binom_tail(9, 0.3, 0) == 1.0);
  CHECK(binom_tail(9, 0.3, -2) == 1.0);
  CHECK(binom_tail(9, 0.3, 10) == 0.0);
  for (std::uint64_t m : {1u, 5u, 8u, 20u, 60u}) {
    for (double p : {0.0, 1e-6, 0.1, 0.5, 0.93, 0.999999, 1.0}) {
      for (std::int64_t t = -1; t <= static_cast<std::int64_t>(m) + 1; ++t) {
        REQUIRE(binom_tail(m, p, t) == doctest::Approx(direct_tail(m, p, t)).epsilon(1e-12).scale(1e-300));
      }
      if (m >= 2) {
        const double c = double(m) * double(m - 1) / 2.0;
        REQUIRE(binom_tail(m, p, static_cast<std::int64_t>(m) - 1) >= 1 - c * (1 - p) * (1 - p) - 1e-15);
      }
    }
  }
  // Supplying q keeps tiny failure probabilities exact.
  const double q = 1e-20;
  CHECK(binom_tail(8, q, 1 - q, 2) == doctest::Approx(28 * q * q).epsilon(1e-6));
}

TEST_CASE("renormalization recursion") {
  const auto trace = iterate_t(2, 3, 1.9, 100.0, 3.0, 30);
  CHECK(trace.s.size() == 31);
  CHECK(trace.s[0] == 1.0);
  CHECK(trace.t[0] == 1.0);
  CHECK(trace.contraction_holds());
  CHECK(trace.s_limit() > 0.99);
  CHECK(trace.t_limit() > 0.0);
  for (std::size_t n = 0; n < trace.s.size(); ++n) {
    REQUIRE(trace.s[n] >= 0.0);
    REQUIRE(trace.s[n] <= 1.0);
    REQUIRE(std::abs(trace.xi[n] - (1 - trace.s[n])) < 1e-11);
    if (n) {
      REQUIRE(trace.t[n] <= trace.t[n - 1]);
      REQUIRE(trace.epsilon[n] <= trace.epsilon[n - 1]);
      REQUIRE(trace.comparison_ok[n]);
    }
  }
  CHECK(trace.pair_bound == 28.0);
  CHECK(trace.contraction_rate == doctest::Approx(1.0 / 112.0));

  // The recursion with equality, recomputed by direct summation.
  double s = 1.0;
  for (unsigned n = 0; n < 6; ++n) {
    s = direct_tail(8, s * (1 - epsilon_n(100.0, 3.0, 3, 1.9, n)), 7);
    REQUIRE(trace.s[n + 1] == doctest::Approx(s).epsilon(1e-10));
  }

  const auto dead = iterate_t(2, 3, 1.9, 0.0, 3.0, 10);
  CHECK(dead.s[1] == 0.0);
  CHECK(dead.t_limit() == doctest::Approx(0.0).scale(1e-300));
  CHECK(dead.contraction_holds());
  CHECK_THROWS_AS(iterate_s(2, 2, 1.8, 100.0, 3.0, 10), ParameterError);
}

TEST_CASE("contraction holds across parameters") {
  for (double alpha : {1.0, 10.0, 60.0, 500.0}) {
    for (double eta : {1.75, 1.85, 1.9, 1.91}) {
      const auto trace = iterate_s(2, 3, eta, alpha, 3.0, 25);
      REQUIRE(trace.contraction_holds());
      if (trace.certificate_preconditions) REQUIRE(trace.certified());
    }
  }
}

TEST_CASE("binomial fixed point") {
  CHECK(fixed_point_G(5, 1.0) == 1.0);
  CHECK(fixed_point_G(5, 0.0) == 0.0);
  CHECK(fixed_point_G(8, 0.5) == 0.0);
  CHECK(fixed_point_G(8, 0.99) == 0.0);
  CHECK(oracle::binomial_fixed_point(8, 0.99) == 0.0);
  for (auto [m, p] : {std::pair<std::uint64_t, double>{8, 0.999}, {8, 0.995}, {4, 0.95}, {2, 0.9}, {16, 0.9999}}) {
    const double g = fixed_point_G(m, p);
    INFO("m = " << m << ", p = " << p);
    REQUIRE(g > 0.0);
    REQUIRE(std::abs(binomial_map(m, p, g) - g) < 1e-10);
    REQUIRE(g == doctest::Approx(oracle::binomial_fixed_point(m, p)).epsilon(1e-10));
    for (int i = 1; i <= 10000; ++i) {
      const double x = g + (1 - g) * i / 10000.0;
      if (x >= 1.0) break;
      REQUIRE(binomial_map(m, p, x) < x);
    }
  }
}

TEST_CASE("giant fraction") {
  CHECK(giant_fraction(0.0) == 0.0);
  CHECK(giant_fraction(0.5) == 0.0);
  CHECK(giant_fraction(1.0) == 0.0);
  CHECK(std::abs(giant_fraction(2.0) - 0.796812) < 1e-6);
  double previous = 0.0;
  for (double lambda = 1.05; lambda < 50; lambda *= 1.3) {
    const double rho = giant_fraction(lambda);
    REQUIRE(rho > previous);
    REQUIRE(std::abs(1 - rho - std::exp(-lambda * rho)) < 1e-10);
    const double root = oracle::bisection([&](double r) { return 1 - r - std::exp(-lambda * r); }, 1e-9 + (lambda - 1) / (lambda * lambda) * 0.5, 1.0);
    REQUIRE(rho == doctest::Approx(root).epsilon(1e-10));
    previous = rho;
  }
  CHECK(giant_fraction(800.0) == 1.0);
}

TEST_CASE("coupling") {
  const auto c = gamma_for_epsilon(2, 1.0, 3.0, 0.5);
  CHECK(c.lambda1 == doctest::Approx(1.0));
  CHECK(c.lambda2 == doctest::Approx(1.5));
  CHECK(c.gamma == doctest::Approx((std::exp(-1.0) - std::exp(-1.5)) / (1 - std::exp(-1.5))).epsilon(1e-14));
  CHECK(std::abs(c.gamma + (1 - c.gamma) * std::exp(-c.lambda2) - std::exp(-c.lambda1)) < 1e-15);
  CHECK(gamma_for_epsilon(2, 1.0, 3.0, 1e-9).gamma < 1e-8);
  CHECK(gamma_for_epsilon(2, 1.0, 3.0, 0.0).gamma == 0.0);
  CHECK_THROWS_AS(gamma_for_epsilon(2, 1.0, 2.0, 0.5), ParameterError);
  CHECK_THROWS_AS(gamma_for_epsilon(2, 1.0, 3.0, -0.1), ParameterError);

  for (unsigned k = 0; k <= 50; ++k) {
    const auto t = coupling_tails(c, k);
    REQUIRE(t.z2 == doctest::Approx(t.y2).epsilon(1e-12).scale(1e-300));
    const double z1 = oracle::poisson_upper_tail(c.lambda1, k) / (1 - std::exp(-c.lambda1));
    REQUIRE(t.z1 == doctest::Approx(z1).epsilon(1e-9).scale(1e-280));
  }
  CHECK(dominance_check(2, 1.0, 3.0, 0.5, 50));
  CHECK_FALSE(dominance_check(2, 1.0, 3.0, 0.0, 50));
}

TEST_CASE("subcritical series bound") {
  CHECK(subcritical_b(2, 1.0, 4.0, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(subcritical_b(2, 1.0, 4.0, 1e-12) < 1e-11);
  double previous = 0.0;
  for (double eps = 0.01; eps < 0.5; eps += 0.02) {
    const double b = subcritical_b(2, 1.0, 4.0, eps);
    REQUIRE(b > previous);
    previous = b;
  }
  CHECK_THROWS_AS(subcritical_b(2, 1.0, 4.0, 0.5), ParameterError);
  // The linearized series sums to the closed form with beta in place of N.
  for (double eps : {0.05, 0.2, 0.3}) {
    double series = 0.0;
    for (unsigned i = 1; i < 1000; ++i) {
      series += std::pow(2.0, i - 1) * (std::pow(4.0 * (1 - eps), -double(i)) - std::pow(4.0, -double(i)));
    }
    CHECK(subcritical_b(2, 1.0, 4.0, eps) * 4.0 / 2.0 == doctest::Approx(series).epsilon(1e-9));
  }
}

TEST_CASE("subcritical series") {
  for (double alpha : {0.1, 1.0, 5.0}) {
    for (double eps : {0.01, 0.1, 0.3}) {
      double direct = 0.0;
      for (unsigned i = 1; i < 1000; ++i) {
        const double x = alpha * std::pow(4.0, -double(i)) * (std::pow(1 - eps, -double(i)) - 1);
        direct += std::pow(2.0, i - 1) * -std::expm1(-x);
      }
      const double value = subcritical_b_series(2, alpha, 4.0, eps);
      REQUIRE(value == doctest::Approx(direct).epsilon(1e-10));
      REQUIRE(value <= subcritical_b(2, alpha, 4.0, eps) * 2.0);
    }
  }
  CHECK(subcritical_b_series(2, 1.0, 4.0, 0.0) == 0.0);
  CHECK(subcritical_b_series(3, 0.7, 4.0, 0.2) < subcritical_b(3, 0.7, 4.0, 0.2) * 4.0 / 3.0);
  CHECK_THROWS_AS(subcritical_b_series(2, 1.0, 4.0, 0.5), ParameterError);
}

TEST_CASE("expected cluster bound") {
  CHECK(*expected_cluster_bound(3.0, 0.0) == 3.0);
  CHECK(*expected_cluster_bound(2.0, 0.25) == 4.0);
  CHECK_FALSE(expected_cluster_bound(2.0, 0.5).has_value());
  CHECK_THROWS_AS(expected_cluster_bound(0.5, 0.1), ParameterError);
  CHECK_THROWS_AS(expected_cluster_bound(2.0, -0.1), ParameterError);
}
