#include "harness/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "esqkd/error.hpp"

namespace esqkd {

double binomial_stderr(double proportion, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(proportion * (1.0 - proportion) / static_cast<double>(n));
}

ChiSquare chi_square_uniform(std::span<const std::size_t> counts) {
  if (counts.size() < 2) throw InvalidArgument("chi-square needs at least two cells");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(),
                                                           std::size_t{0}));
  if (total == 0.0) throw InvalidArgument("chi-square needs at least one observation");
  const double expected = total / static_cast<double>(counts.size());
  ChiSquare result;
  for (const auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    result.statistic += d * d / expected;
  }
  result.degrees_of_freedom = static_cast<unsigned>(counts.size() - 1);
  const boost::math::chi_squared dist(result.degrees_of_freedom);
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

}  // namespace esqkd
