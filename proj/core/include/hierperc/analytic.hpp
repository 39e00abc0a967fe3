#pragma once

// Closed forms and recursions for long-range percolation on the hierarchical
// lattice: shell and escape probabilities, the mean-degree bound, the
// renormalization recursions for good balls, the binomial fixed point, the
// giant-component density and the Poisson coupling behind the mixed model.
//
// Every tail probability is an exact sum evaluated in the log domain. The
// renormalization recursions are run with equality in place of the
// inequalities they come from, so the values they produce are lower bounds on
// the true good-ball probabilities, not estimates of them.

#include <cstdint>
#include <optional>
#include <vector>

namespace hierperc::analytic {

/// Horizon argument meaning "sum to infinity".
inline constexpr std::optional<unsigned> kInfinite = std::nullopt;

/// P(E_k): the origin has an edge to some vertex at distance k.
double shell_edge_prob(unsigned order, double alpha, double beta, unsigned k);

/// sum_{k=1}^{k_max} P(E_k).
double shell_edge_prob_partial_sum(unsigned order, double alpha, double beta, unsigned k_max);

/// sum_{k=j+1}^{horizon} (N-1) N^{k-1} beta^{-k}. The infinite sum equals
/// (N-1)/(beta-N) (N/beta)^j and throws DivergenceError when beta <= N.
double escape_series(unsigned order, double beta, unsigned j, std::optional<unsigned> horizon);

/// P(B_j(0) <-> B_horizon(0) \ B_j(0)) = 1 - exp(-alpha N^j escape_series).
/// At beta = N^2 and infinite horizon this is 1 - exp(-alpha / N) for every j.
/// Throws DivergenceError for an infinite horizon with beta <= N (the event
/// then has probability 1).
double ball_escape_prob(unsigned order, double alpha, double beta, unsigned j, std::optional<unsigned> horizon);

/// Expected degree sum_k (N-1) N^{k-1} p_k; std::nullopt when beta <= N (diverges).
/// Terms are summed directly while alpha beta^{-k} >= 1e-3; the remainder is
/// the alternating series of exact geometric sums from expanding 1 - e^{-x},
/// truncated once the first omitted term is below 1e-13.
std::optional<double> expected_degree(unsigned order, double alpha, double beta);

/// (beta - N)/(N - 1) for beta > N, else 0.
double alpha_c_lower_bound(unsigned order, double beta);

/// Escape probability of a cluster of `cluster_size` vertices inside B_i(0):
/// 1 - exp(-alpha * cluster_size * escape_series(N, beta, i, horizon)).
double cond_escape_prob(double cluster_size, unsigned i, unsigned order, double alpha, double beta,
                        std::optional<unsigned> horizon = kInfinite);

struct EtaCheck {
  bool valid = false;       ///< sqrt(beta) < eta <= (N^K - 1)^{1/K}
  bool range_nonempty = false;
  std::optional<unsigned> smallest_block;  ///< least K with a nonempty range (none if beta >= N^2)
};

EtaCheck validate_eta(unsigned order, double beta, unsigned block, double eta);

/// eps_n = exp(-(alpha / beta^K) (eta^2 / beta)^{nK}).
double epsilon_n(double alpha, double beta, unsigned block, double eta, unsigned n);

/// delta = (beta / eta^2)^{alpha K beta^{-K}}, which satisfies eps_n <= delta^n.
double epsilon_rate(double alpha, double beta, unsigned block, double eta);

/// P(Bin(m, p) >= threshold). 1 for threshold <= 0, 0 for threshold > m.
double binom_tail(std::uint64_t m, double p, std::int64_t threshold);

/// Same, with the failure probability supplied separately so that values of
/// 1 - p far below machine epsilon keep full relative precision.
double binom_tail(std::uint64_t m, double p, double q, std::int64_t threshold);

struct RecursionTrace {
  unsigned order = 0;
  unsigned block = 0;  ///< K
  double eta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double pair_bound = 0.0;        ///< C = binom(N^K, 2)
  double contraction_rate = 0.0;  ///< gamma = 1 / (4C), the largest rate the induction allows

  // Index n = 0..n_max.
  std::vector<double> epsilon;
  std::vector<double> s;   ///< lower bound on P(B_{nK} is good); s[0] = 1
  std::vector<double> xi;  ///< 1 - s, computed directly
  std::vector<double> t;   ///< lower bound on P(|C_{nK}(0)| >= eta^{nK}); empty unless iterate_t
  std::vector<bool> contraction_ok;  ///< xi[n] <= C (xi[n-1] + eps[n-1])^2 (true at n = 0)
  std::vector<bool> certificate_ok;  ///< xi[n] <= gamma^{n+1}
  std::vector<bool> comparison_ok;   ///< P(Bin(N^K-1,q) >= N^K-2) >= P(Bin(N^K,q) >= N^K-1); iterate_t only

  /// eps_n <= gamma^n for every computed n and xi_1 <= gamma^2.
  bool certificate_preconditions = false;

  bool contraction_holds() const;
  /// Preconditions met and xi_n <= gamma^{n+1} at every step.
  bool certified() const;
  double s_limit() const { return s.back(); }
  double t_limit() const { return t.empty() ? 0.0 : t.back(); }
};

/// s_0 = 1, s_{n+1} = P(Bin(N^K, s_n (1 - eps_n)) >= N^K - 1). Throws
/// ParameterError unless validate_eta(N, beta, K, eta).valid.
RecursionTrace iterate_s(unsigned order, unsigned block, double eta, double alpha, double beta, unsigned n_max);

/// iterate_s plus t_0 = 1, t_{n+1} = t_n P(Bin(N^K - 1, s_n (1 - eps_n)) >= N^K - 2).
RecursionTrace iterate_t(unsigned order, unsigned block, double eta, double alpha, double beta, unsigned n_max);

/// G_p(x) = P(Bin(m, p x) >= m - 1).
double binomial_map(std::uint64_t m, double p, double x);

/// Largest x in [0, 1] with G_p(x) = x, found by the decreasing iteration
/// u_{n+1} = G_p(u_n) from u_0 = 1 and polished with a bracketing solver.
double fixed_point_G(std::uint64_t m, double p);

/// Largest rho in [0, 1) with 1 - rho = exp(-lambda rho); 0 for lambda <= 1.
double giant_fraction(double lambda);

struct CouplingParams {
  double lambda1 = 0.0;  ///< alpha (N-1)/(beta-N)
  double lambda2 = 0.0;  ///< (1 + eps) lambda1
  double gamma = 0.0;    ///< closure probability with P(Z1 = 0) = P(Z2 = 0)
  double epsilon = 0.0;
};

/// gamma = (e^{-l1} - e^{-l2}) / (1 - e^{-l2}). Throws ParameterError when
/// beta <= N, alpha <= 0 or eps < 0 (eps = 0 gives gamma = 0).
CouplingParams gamma_for_epsilon(unsigned order, double alpha, double beta, double epsilon);

/// Conditional tails P(X > k | X > 0) for Z1 ~ Poisson(l1), Z2 = Y1 Y2 and
/// Y2 ~ Poisson(l2), Y1 ~ Bernoulli(1 - gamma).
struct CouplingTails {
  double z1 = 0.0;
  double z2 = 0.0;
  double y2 = 0.0;
};

CouplingTails coupling_tails(const CouplingParams& coupling, unsigned k);

/// True iff P(Z2 > k | Z2 > 0) > P(Z1 > k | Z1 > 0) strictly for k = 1..k_max.
bool dominance_check(unsigned order, double alpha, double beta, double epsilon, unsigned k_max);

/// b = alpha eps (N-1) N / ((beta(1-eps) - N)(beta - N)); ParameterError unless beta(1-eps) > N.
double subcritical_b(unsigned order, double alpha, double beta, double epsilon);

/// sum_{i>=1} (N-1) N^{i-1} (1 - exp(-alpha beta^{-i} ((1-eps)^{-i} - 1))), the
/// expected number of extra neighbours gained by lowering beta to beta(1-eps).
/// Bounded above by alpha eps (N-1) beta / ((beta(1-eps) - N)(beta - N)),
/// which exceeds subcritical_b by the factor beta / N.
double subcritical_b_series(unsigned order, double alpha, double beta, double epsilon);

/// a / (1 - ab); std::nullopt when ab >= 1. ParameterError for a < 1 or b < 0.
std::optional<double> expected_cluster_bound(double a, double b);

}  // namespace hierperc::analytic
