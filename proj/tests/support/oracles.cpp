#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

unsigned digit_distance(unsigned order, std::uint64_t x, std::uint64_t y) {
  unsigned d = 0;
  for (unsigned i = 1; x != 0 || y != 0; ++i) {
    if (x % order != y % order) d = i;
    x /= order;
    y /= order;
  }
  return d;
}

std::vector<Edge> pairs_at_distance(unsigned order, unsigned radius, unsigned k) {
  std::vector<Edge> out;
  const std::uint64_t n = ipow(order, radius);
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = u + 1; v < n; ++v) {
      if (digit_distance(order, u, v) == k) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::uint64_t> bfs_components(std::uint64_t vertex_count, const std::vector<Edge>& edges,
                                          const std::vector<bool>& open) {
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::vector<std::uint64_t>> adjacency(vertex_count);
  for (const auto& [u, v] : edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  std::vector<std::uint64_t> label(vertex_count, kNone);
  for (std::uint64_t s = 0; s < vertex_count; ++s) {
    if (label[s] != kNone || (!open.empty() && !open[s])) continue;
    std::deque<std::uint64_t> queue{s};
    label[s] = s;
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto y : adjacency[x]) {
        if (label[y] == kNone) {
          label[y] = s;
          queue.push_back(y);
        }
      }
    }
  }
  return label;
}

double bisection(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if ((flo > 0) == (f(hi) > 0)) throw std::invalid_argument("bisection: no sign change");
  for (int i = 0; i < 400 && hi - lo > tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / double(a.size()) - double(j) / double(b.size())));
  }
  return d;
}

double ks_critical_001(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

double chi_square_pvalue(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities) {
  double total = 0.0;
  for (auto o : observed) total += double(o);
  std::vector<double> obs;
  std::vector<double> exp;
  double o_acc = 0.0;
  double e_acc = 0.0;
  for (std::size_t c = 0; c < probabilities.size(); ++c) {
    o_acc += c < observed.size() ? double(observed[c]) : 0.0;
    e_acc += probabilities[c] * total;
    if (e_acc >= 5.0) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp.empty()) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
    } else {
      obs.back() += o_acc;
      exp.back() += e_acc;
    }
  }
  if (exp.size() < 2) return 1.0;
  double chi2 = 0.0;
  for (std::size_t c = 0; c < exp.size(); ++c) chi2 += (obs[c] - exp[c]) * (obs[c] - exp[c]) / exp[c];
  boost::math::chi_squared dist(double(exp.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi2));
}

SmallLaws enumerate_n2_laws(double alpha, double beta) {
  const std::vector<Edge> pairs{{0, 1}, {2, 3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  const double p1 = 1.0 - std::exp(-alpha / beta);
  const double p2 = 1.0 - std::exp(-alpha / (beta * beta));
  SmallLaws laws{std::vector<double>(5, 0.0), std::vector<double>(5, 0.0)};
  for (unsigned mask = 0; mask < 64; ++mask) {
    double weight = 1.0;
    std::vector<Edge> present;
    for (unsigned e = 0; e < 6; ++e) {
      const double p = e < 2 ? p1 : p2;
      if (mask & (1u << e)) {
        weight *= p;
        present.push_back(pairs[e]);
      } else {
        weight *= 1.0 - p;
      }
    }
    const auto label = bfs_components(4, present);
    std::vector<unsigned> size(4, 0);
    for (auto l : label) ++size[l];
    laws.largest[*std::max_element(size.begin(), size.end())] += weight;
    laws.origin[size[label[0]]] += weight;
  }
  return laws;
}

double binomial_pmf(std::uint64_t m, double p, std::uint64_t j) {
  double c = 1.0;
  for (std::uint64_t i = 0; i < j; ++i) c = c * double(m - i) / double(i + 1);
  return c * std::pow(p, double(j)) * std::pow(1.0 - p, double(m - j));
}

double binomial_fixed_point(std::uint64_t m, double p) {
  auto g = [&](double x) { return binomial_pmf(m, p * x, m - 1) + binomial_pmf(m, p * x, m) - x; };
  if (p == 1.0) return 1.0;
  const int grid = 20000;
  double upper = 1.0;
  for (int i = grid - 1; i >= 1; --i) {
    const double x = double(i) / grid;
    if (g(x) >= 0.0) return bisection(g, x, upper, 1e-16);
    upper = x;
  }
  return 0.0;
}

double poisson_upper_tail(double lambda, unsigned k) {
  // pmf(k + 1) built up in logs, then the terms above k summed directly.
  double term = std::exp(-lambda + double(k + 1) * std::log(lambda) - std::lgamma(double(k) + 2.0));
  double sum = 0.0;
  for (unsigned i = k + 1; term > 1e-30 * sum || i < k + 10; ++i) {
    sum += term;
    term *= lambda / double(i + 1);
    if (i > k + 100000) break;
  }
  return sum;
}

}  // namespace oracle
