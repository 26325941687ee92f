#pragma once

#include <span>
#include <vector>

#include "ivq/causal/covariates.hpp"

namespace ivq::causal {

/// Normal scores by rank: mid-ranks r over the sample, plotting position
/// (r - 0.5) / n, then the standard normal quantile.
std::vector<double> quantile_transform(std::span<const double> xs);

/// Expanded design for propensity estimation: the base columns, log1p of the
/// two count columns, degree-2 polynomial terms (squares and pairwise
/// products) of the base columns, and rank-based normal scores of the base
/// columns. Every resulting column is standardized to mean 0, sd 1; constant
/// columns are left untouched and flagged in `notes`.
CovariateMatrix transform_covariates(const CovariateMatrix& m);

}  // namespace ivq::causal
