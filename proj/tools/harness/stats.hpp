#pragma once

#include <cstddef>
#include <span>

namespace esqkd {

/// Standard error of a binomial proportion estimated from n trials.
double binomial_stderr(double proportion, std::size_t n);

struct ChiSquare {
  double statistic = 0.0;
  unsigned degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit against the uniform distribution over counts.size() cells.
ChiSquare chi_square_uniform(std::span<const std::size_t> counts);

}  // namespace esqkd
