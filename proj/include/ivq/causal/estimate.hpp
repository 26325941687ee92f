#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ivq/causal/covariates.hpp"
#include "ivq/causal/matching.hpp"

namespace ivq::causal {

struct AteEstimate {
  std::string outcome_name;
  double ate = 0.0;  // coefficient on treatment
  double se = 0.0;   // heteroskedasticity-robust (HC0)
  double t = 0.0;
  double p = 1.0;  // two-sided normal
  std::array<double, 2> ci_95{0.0, 0.0};  // ate +- 1.96 se
  double intercept = 0.0;
  std::vector<double> covariate_coefficients;  // per matrix column
  double residual_variance = 0.0;  // weighted mean squared residual
  bool significant = false;        // p < 0.05
  /// Set by placebo_test: true when the effect is, as required, absent.
  std::optional<bool> placebo_pass;
};

/// Weighted least squares of the outcome on treatment plus the matrix
/// columns over the matched sample (treated weight 1, controls their summed
/// kernel weight), with HC0 sandwich standard errors. Throws on misaligned
/// outcomes or a rank-deficient design.
AteEstimate estimate_ate(const std::string& outcome_name,
                         const std::vector<double>& outcome,
                         const CovariateMatrix& m, const MatchResult& match);

/// estimate_ate applied to an outcome treatment cannot affect; passes when
/// p > 0.05.
AteEstimate placebo_test(const std::string& outcome_name,
                         const std::vector<double>& outcome,
                         const CovariateMatrix& m, const MatchResult& match);

}  // namespace ivq::causal
