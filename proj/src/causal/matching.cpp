#include "ivq/causal/matching.hpp"

#include <cmath>

#include "ivq/error.hpp"

namespace ivq::causal {

double gaussian_kernel(double d, double h) {
  return std::exp(-(d * d) / (2.0 * h * h));
}

MatchResult kernel_match(const std::vector<double>& scores,
                         const std::vector<int>& treatment,
                         const std::vector<std::string>& ids,
                         const MatchOptions& opts) {
  const std::size_t n = scores.size();
  if (treatment.size() != n || ids.size() != n) {
    throw DataError("kernel_match: scores, treatment and ids must align");
  }
  if (opts.bandwidth <= 0.0) {
    throw DataError("kernel_match: bandwidth must be positive");
  }

  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sd = n >= 2 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  if (sd <= 0.0) {
    throw DataError("kernel_match: SD of propensity scores is zero");
  }

  MatchResult out;
  out.bandwidth = opts.bandwidth;
  out.caliper = opts.caliper_multiplier * sd;
  out.unit_weight.assign(n, 0.0);

  std::vector<std::size_t> controls;
  for (std::size_t i = 0; i < n; ++i) {
    if (treatment[i] == 0) controls.push_back(i);
  }

  std::size_t retained = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (treatment[i] != 1) continue;
    double total = 0.0;
    std::vector<MatchedPair> local;
    for (std::size_t j : controls) {
      const double d = std::abs(scores[i] - scores[j]);
      if (d > out.caliper) continue;  // weight exactly 0 beyond the caliper
      const double k = gaussian_kernel(d, opts.bandwidth);
      local.push_back({i, j, k});
      total += k;
    }
    if (local.empty() || total <= 0.0) {
      out.dropped.push_back(i);
      out.dropped_ids.push_back(ids[i]);
      continue;
    }
    ++retained;
    out.unit_weight[i] = 1.0;
    for (auto& pair : local) {
      pair.weight /= total;
      out.unit_weight[pair.control] += pair.weight;
      out.pairs.push_back(pair);
    }
  }

  if (retained == 0) {
    std::string listing;
    for (std::size_t i = 0; i < out.dropped_ids.size() && i < 10; ++i) {
      if (i) listing += ", ";
      listing += out.dropped_ids[i];
    }
    throw DataError("kernel_match: no common support; all treated units "
                    "dropped (" + listing + ")");
  }
  return out;
}

}  // namespace ivq::causal
