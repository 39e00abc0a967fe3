#pragma once

#include <string>
#include <vector>

#include "hierperc/report.hpp"
#include "options.hpp"

namespace hierperc::cli {

std::vector<std::string> formula_names();

/// Evaluates one closed-form quantity; the result is a single-row report
/// with column "value". Throws ParameterError for an unknown formula.
ExperimentReport evaluate_formula(const Options& options);

}  // namespace hierperc::cli
