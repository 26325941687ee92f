#pragma once

#include <span>

namespace ivq::stats {

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

struct MwuResult {
  double u = 0.0;  // U statistic of the first sample
  double p = 1.0;  // two-sided
  bool exact = false;
};

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Requires n >= 2 per group and nonzero variance in at least one.
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

/// Mann-Whitney U with mid-rank tie handling. Exact p by enumeration when the
/// pooled sample is tie-free and n_a * n_b <= 400; otherwise normal
/// approximation with tie-corrected variance and 0.5 continuity correction.
/// Two-sided p uses max(U_a, U_b) in both regimes.
MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Rank-biserial correlation r = 1 - 2U/(n_a * n_b) for a first-sample U.
double rank_biserial(double u, std::size_t n_a, std::size_t n_b);

}  // namespace ivq::stats
