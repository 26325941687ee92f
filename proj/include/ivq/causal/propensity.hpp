#pragma once

#include <string>
#include <vector>

#include "ivq/causal/covariates.hpp"

namespace ivq::causal {

struct PropensityOptions {
  double ridge = 1e-6;      // added to the normal equations' diagonal
  double tol = 1e-8;        // max |coefficient change| for convergence
  unsigned max_iterations = 100;
  double score_clip = 1e-6;       // scores kept in [clip, 1 - clip]
  double boundary_margin = 1e-3;  // near-boundary diagnostic threshold
  double divergence_limit = 250.0;  // |beta| beyond this flags separation
};

struct PropensityModel {
  /// Intercept first, then one coefficient per covariate column.
  std::vector<double> coefficients;
  /// Asymptotic standard errors from the observed information.
  std::vector<double> std_errors;
  std::vector<double> scores;  // clipped to the open unit interval
  bool converged = false;
  unsigned iterations = 0;
  /// Units whose score sits within boundary_margin of 0 or 1 (overlap
  /// diagnostic).
  std::vector<std::string> near_boundary;
};

/// Logistic regression of treatment on the matrix columns via iteratively
/// reweighted least squares with a small ridge for stability. Throws on a
/// single-level treatment, on n <= columns, and on suspected perfect
/// separation (diverging coefficients).
PropensityModel fit_propensity(const CovariateMatrix& m,
                               const PropensityOptions& opts = {});

}  // namespace ivq::causal
