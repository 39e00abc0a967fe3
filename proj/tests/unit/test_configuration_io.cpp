#include <doctest.h>

#include <sstream>

#include "hierperc/configuration_io.hpp"
#include "hierperc/errors.hpp"

using namespace hierperc;

namespace {

void check_round_trip(const Configuration& c) {
  std::stringstream buffer;
  write_configuration_csv(buffer, c);
  const Configuration back = read_configuration_csv(buffer);
  CHECK(back.params().order == c.params().order);
  CHECK(back.params().radius == c.params().radius);
  CHECK(back.params().alpha == c.params().alpha);
  CHECK(back.params().beta == c.params().beta);
  CHECK(back.params().gamma == c.params().gamma);
  CHECK(back.params().seed == c.params().seed);
  CHECK(back.params().replicate == c.params().replicate);
  CHECK(back.open_mask() == c.open_mask());
  CHECK(std::equal(back.edges().begin(), back.edges().end(), c.edges().begin(), c.edges().end()));
}

}  // namespace

TEST_CASE("csv round trip") {
  check_round_trip(sample(PercolationParams{2, 1.0 / 3.0, 2.7182818284590451, 5, 0.0, 0xDEADBEEFCAFEull, 12}));
  check_round_trip(sample(PercolationParams{3, 4.0, 3.5, 3, 0.25, 7, 1}));
  check_round_trip(Configuration(PercolationParams{2, 0.0, 2.0, 0}, {}));
}

TEST_CASE("csv layout") {
  const Configuration c(PercolationParams{2, 1.0, 3.0, 2, 0.0, 42, 0}, {{2, 3}, {0, 1}});
  std::ostringstream out;
  write_configuration_csv(out, c);
  CHECK(out.str() == "N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3,0,42,0\nopen_mask,\nu,v\n0,1\n2,3\n");
}

TEST_CASE("malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_configuration_csv(in);
  };
  CHECK_THROWS_AS(parse(""), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3\n"), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3,0,1,0\nu,v\n"), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,x,3,0,1,0\nopen_mask,\nu,v\n"), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3,0,1,0\nopen_mask,\nu,v\n0,9\n"), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3,0.5,1,0\nopen_mask,1201\nu,v\n"), ParameterError);
  CHECK_THROWS_AS(parse("N,n,alpha,beta,gamma,seed,replicate\n2,2,1,3,0,1,0\nopen_mask,\nu,v\n1\n"), ParameterError);
}
