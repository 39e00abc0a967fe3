#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hierperc/report.hpp"
#include "hierperc/statistics.hpp"

using namespace hierperc;

TEST_CASE("estimate") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto e = estimate(xs);
  CHECK(e.mean == 2.5);
  CHECK(e.count == 4);
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-15));
  const std::vector<double> constant(10, 0.25);
  CHECK(estimate(constant).std_error == 0.0);
  CHECK(estimate(std::vector<double>{}).count == 0);
  CHECK(estimate(std::vector<double>{3.0}).std_error == 0.0);
  const std::vector<double> third(7, 1.0 / 3.0);
  CHECK(estimate(third).mean == 1.0 / 3.0);
  CHECK(estimate(third).std_error == 0.0);
}

TEST_CASE("comparisons") {
  const Estimate a{1.0, 0.1, 100};
  const Estimate b{1.3, 0.1, 100};
  CHECK(consistent(a, b));
  CHECK_FALSE(consistent(a, {2.0, 0.1, 100}));
  CHECK(not_below(a, b));
  CHECK_FALSE(not_below(a, {2.0, 0.1, 100}));
  CHECK(not_below(b, a));
}

TEST_CASE("report writers") {
  ExperimentReport r;
  r.name = "demo";
  r.master_seed = 9;
  r.parameters = {{"order", std::int64_t{2}}, {"alpha", 0.5}};
  r.columns = {"k", "value"};
  r.rows = {{1.0, 0.25}, {2.0, std::nan("")}};
  r.summary = {{"ok", true}, {"verdict", std::string("interval")}};
  std::ostringstream csv;
  write_csv(csv, r);
  CHECK(csv.str() == "k,value\n1,0.25\n2,\n");
  std::ostringstream json;
  write_json(json, r);
  const std::string text = json.str();
  CHECK(text.find("\"name\": \"demo\"") != std::string::npos);
  CHECK(text.find("\"value\": null") != std::string::npos);
  CHECK(text.find("\"verdict\": \"interval\"") != std::string::npos);
  CHECK(r.at(0, "value") == 0.25);
  CHECK(r.summary_flag("ok"));
  CHECK(r.summary_text("verdict") == "interval");
  CHECK_THROWS_AS(r.column_index("missing"), std::out_of_range);
  CHECK_THROWS_AS(r.summary_value("missing"), std::out_of_range);
}
