#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ivq::stats {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample sd (n-1 denominator); absent when n < 2
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

double mean(std::span<const double> xs);

/// Sample standard deviation (n-1 denominator). Throws DataError when n < 2.
double sample_sd(std::span<const double> xs);

/// Midpoint median: average of the two central order statistics for even n.
double median(std::vector<double> xs);

/// Throws DataError on an empty sample.
SummaryStats describe(std::span<const double> xs);

}  // namespace ivq::stats
