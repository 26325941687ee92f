#include "ivq/stats/descriptive.hpp"

#include <algorithm>
#include <cmath>

#include "ivq/error.hpp"

namespace ivq::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DataError("mean: empty sample");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) throw DataError("sample_sd: need at least 2 observations");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - m;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw DataError("median: empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

SummaryStats describe(std::span<const double> xs) {
  if (xs.empty()) throw DataError("describe: empty sample");
  SummaryStats s;
  s.n = xs.size();
  s.mean = mean(xs);
  if (xs.size() >= 2) s.sd = sample_sd(xs);
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  s.median = median(std::vector<double>(xs.begin(), xs.end()));
  return s;
}

}  // namespace ivq::stats
