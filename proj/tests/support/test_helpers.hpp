#pragma once

#include <cmath>
#include <vector>

#include "swivel/cli/instances.hpp"
#include "swivel/swivel_all.hpp"

namespace swivel::testing {

using cli::classical_channel;
using cli::random_distribution;
using cli::random_stochastic;

inline Matrix diag(std::initializer_list<double> values) { return cli::diagonal(std::vector<double>(values)); }
inline Matrix diag(const std::vector<double>& values) { return cli::diagonal(values); }

inline double max_diff(const Matrix& a, const Matrix& b) { return max_abs_entry(a - b); }

}  // namespace swivel::testing
