#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ivq::causal {

struct MatchOptions {
  double bandwidth = 0.1;          // h in K(d) = exp(-d^2 / 2h^2)
  double caliper_multiplier = 0.2; // c = multiplier * SD(PS)
};

struct MatchedPair {
  std::size_t treated;  // row indices into the score/treatment vectors
  std::size_t control;
  double weight;  // normalized within the treated unit's control set
};

struct MatchResult {
  double bandwidth = 0.0;
  double caliper = 0.0;
  std::vector<MatchedPair> pairs;  // ordered by (treated, control)
  /// Per input row: retained treated units 1, controls their summed
  /// normalized kernel weight, dropped/unused units 0.
  std::vector<double> unit_weight;
  std::vector<std::size_t> dropped;      // treated rows with no match
  std::vector<std::string> dropped_ids;
};

double gaussian_kernel(double d, double h);

/// Gaussian-kernel matching on propensity-score distance with the adaptive
/// caliper. Every retained treated unit's control weights sum to 1. Throws
/// DataError when SD(PS) is zero or when every treated unit is dropped.
MatchResult kernel_match(const std::vector<double>& scores,
                         const std::vector<int>& treatment,
                         const std::vector<std::string>& ids,
                         const MatchOptions& opts = {});

}  // namespace ivq::causal
