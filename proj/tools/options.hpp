#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hierperc::cli {

// Every flag lives on the top-level app so that one flat config file can
// supply any of them; each subcommand reads the fields it needs.
struct Options {
  unsigned order = 2;
  double alpha = 1.0;
  double beta = 3.0;
  double gamma = 0.0;
  unsigned radius = 4;
  std::uint64_t replicates = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string sampler = "skip";
  std::uint64_t capacity = std::uint64_t{1} << 26;
  std::string out;
  std::string format = "csv";

  unsigned k_first = 4;
  unsigned k_last = 8;
  unsigned j_first = 0;
  unsigned j_last = 3;
  unsigned horizon = 8;
  unsigned k = 8;
  double threshold = 0.1;
  double bracket_low = 0.25;
  double bracket_high = 16.0;
  double tolerance = 0.02;
  unsigned max_steps = 12;
  double epsilon = 0.5;
  std::vector<std::uint64_t> sizes{2, 4, 8, 16, 32};
  unsigned meta_n = 8;
  double meta_k = 1.0;
  unsigned block = 3;
  double eta = 1.9;
  unsigned steps = 30;
  unsigned length = 8;
  std::uint64_t trials = 2000;

  std::string formula;
  unsigned j = 0;
  unsigned i = 0;
  double lambda = 2.0;
  std::uint64_t m = 4;
  double p = 0.5;
  std::int64_t t = 3;
  double size = 1.0;
  double a = 1.0;
  double b = 0.0;
  unsigned n = 1;
};

}  // namespace hierperc::cli
