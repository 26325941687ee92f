#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivq/causal/covariates.hpp"
#include "ivq/causal/matching.hpp"

namespace ivq::causal {

struct CovariateBalance {
  std::string column;
  std::optional<double> smd_pre;   // raw groups
  std::optional<double> smd_post;  // weighted matched sample
  std::optional<double> pct_improvement;  // 100 * (1 - |post|/|pre|)
  std::string flag;  // set when an SMD is undefined
};

struct BalanceReport {
  std::vector<CovariateBalance> rows;  // one per matrix column
};

/// (mean_t - mean_c) / sqrt((var_t + var_c) / 2); absent when the pooled
/// spread is zero.
std::optional<double> smd(double mean_t, double mean_c, double var_t,
                          double var_c);

BalanceReport smd_balance(const CovariateMatrix& m, const MatchResult& match);

}  // namespace ivq::causal
