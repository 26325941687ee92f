#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivq/stats/effect.hpp"
#include "ivq/stats/inference.hpp"

namespace ivq::stats {

struct CompareOptions {
  BootstrapOptions bootstrap;
};

/// One row of the group-comparison tables: descriptives and difference
/// columns plus significance tests and effect size.
struct GroupComparison {
  std::string metric_name;
  std::size_t ai_n = 0;
  std::size_t human_n = 0;
  double ai_mean = 0.0;
  double human_mean = 0.0;
  std::optional<double> ai_sd;     // absent when n < 2
  std::optional<double> human_sd;
  double diff = 0.0;                // ai_mean - human_mean
  std::optional<double> impr_pct;   // 100 * diff / human_mean; absent at 0
  std::optional<WelchResult> welch;
  std::optional<MwuResult> mwu;
  std::optional<CohensDEstimate> d;
  std::optional<EffectLabel> label;
  /// True when all three tests could run; otherwise `note` says why not.
  bool testable = false;
  std::string note;
};

/// Difference columns alone, for arithmetic self-checks on reported means.
std::pair<double, double> diff_and_impr(double ai_mean, double human_mean);

GroupComparison compare_groups(const std::string& metric_name,
                               std::span<const double> ai_values,
                               std::span<const double> human_values,
                               const CompareOptions& opts = {});

}  // namespace ivq::stats
