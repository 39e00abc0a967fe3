#include "analytic_command.hpp"

#include <functional>
#include <map>
#include <optional>

#include "hierperc/analytic.hpp"
#include "hierperc/errors.hpp"
#include "hierperc/sampler.hpp"

namespace hierperc::cli {

namespace {

using Formula = std::function<double(const Options&, ReportFields&)>;

// horizon 0 on the command line means the infinite sum.
std::optional<unsigned> horizon_of(const Options& o) {
  return o.horizon == 0 ? analytic::kInfinite : std::optional<unsigned>(o.horizon);
}

const std::map<std::string, Formula>& formulas() {
  static const std::map<std::string, Formula> table{
      {"edge-prob",
       [](const Options& o, ReportFields& f) {
         f = {{"alpha", o.alpha}, {"beta", o.beta}, {"k", std::int64_t{o.k}}};
         return edge_prob(o.alpha, o.beta, o.k);
       }},
      {"escape-series",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"beta", o.beta}, {"j", std::int64_t{o.j}},
              {"horizon", std::int64_t{o.horizon}}};
         return analytic::escape_series(o.order, o.beta, o.j, horizon_of(o));
       }},
      {"ball-escape",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"alpha", o.alpha}, {"beta", o.beta},
              {"j", std::int64_t{o.j}},         {"horizon", std::int64_t{o.horizon}}};
         return analytic::ball_escape_prob(o.order, o.alpha, o.beta, o.j, horizon_of(o));
       }},
      {"cond-escape",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"alpha", o.alpha}, {"beta", o.beta},
              {"size", o.size},                 {"i", std::int64_t{o.i}}, {"horizon", std::int64_t{o.horizon}}};
         return analytic::cond_escape_prob(o.size, o.i, o.order, o.alpha, o.beta, horizon_of(o));
       }},
      {"expected-degree",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"alpha", o.alpha}, {"beta", o.beta}};
         const auto degree = analytic::expected_degree(o.order, o.alpha, o.beta);
         if (!degree) throw ParameterError("expected degree is infinite for beta <= N");
         return *degree;
       }},
      {"alpha-c-lower",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"beta", o.beta}};
         return analytic::alpha_c_lower_bound(o.order, o.beta);
       }},
      {"epsilon-n",
       [](const Options& o, ReportFields& f) {
         f = {{"alpha", o.alpha}, {"beta", o.beta}, {"block", std::int64_t{o.block}}, {"eta", o.eta},
              {"n", std::int64_t{o.n}}};
         return analytic::epsilon_n(o.alpha, o.beta, o.block, o.eta, o.n);
       }},
      {"binom-tail",
       [](const Options& o, ReportFields& f) {
         f = {{"m", static_cast<std::int64_t>(o.m)}, {"p", o.p}, {"t", o.t}};
         return analytic::binom_tail(o.m, o.p, o.t);
       }},
      {"fixed-point-g",
       [](const Options& o, ReportFields& f) {
         f = {{"m", static_cast<std::int64_t>(o.m)}, {"p", o.p}};
         return analytic::fixed_point_G(o.m, o.p);
       }},
      {"giant-fraction",
       [](const Options& o, ReportFields& f) {
         f = {{"lambda", o.lambda}};
         return analytic::giant_fraction(o.lambda);
       }},
      {"gamma-for-epsilon",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"alpha", o.alpha}, {"beta", o.beta}, {"epsilon", o.epsilon}};
         return analytic::gamma_for_epsilon(o.order, o.alpha, o.beta, o.epsilon).gamma;
       }},
      {"subcritical-b",
       [](const Options& o, ReportFields& f) {
         f = {{"order", std::int64_t{o.order}}, {"alpha", o.alpha}, {"beta", o.beta}, {"epsilon", o.epsilon}};
         return analytic::subcritical_b(o.order, o.alpha, o.beta, o.epsilon);
       }},
      {"cluster-bound",
       [](const Options& o, ReportFields& f) {
         f = {{"a", o.a}, {"b", o.b}};
         const auto bound = analytic::expected_cluster_bound(o.a, o.b);
         if (!bound) throw ParameterError("a / (1 - ab) is unbounded for ab >= 1");
         return *bound;
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> formula_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : formulas()) names.push_back(name);
  return names;
}

ExperimentReport evaluate_formula(const Options& options) {
  const auto it = formulas().find(options.formula);
  if (it == formulas().end()) throw ParameterError("unknown formula '" + options.formula + "'");
  ExperimentReport report;
  report.name = "analytic:" + options.formula;
  const double value = it->second(options, report.parameters);
  report.columns = {"value"};
  report.rows = {{value}};
  return report;
}

}  // namespace hierperc::cli
