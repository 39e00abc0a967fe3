#pragma once

// Edge-list CSV for configurations:
//
//   N,n,alpha,beta,gamma,seed,replicate
//   2,3,1,3,0,42,0
//   open_mask,<one '0'/'1' per vertex in label order, empty when gamma == 0>
//   u,v
//   0,1
//   ...
//
// Reals are written with 17 significant digits so a read-back is exact.

#include <iosfwd>

#include "hierperc/sampler.hpp"

namespace hierperc {

void write_configuration_csv(std::ostream& out, const Configuration& config);

/// Throws ParameterError on malformed input.
Configuration read_configuration_csv(std::istream& in);

}  // namespace hierperc
