#include "ivq/stats/compare.hpp"

#include <cmath>

#include "ivq/error.hpp"
#include "ivq/stats/descriptive.hpp"

namespace ivq::stats {

std::pair<double, double> diff_and_impr(double ai_mean, double human_mean) {
  const double diff = ai_mean - human_mean;
  return {diff, 100.0 * diff / human_mean};
}

GroupComparison compare_groups(const std::string& metric_name,
                               std::span<const double> ai_values,
                               std::span<const double> human_values,
                               const CompareOptions& opts) {
  if (ai_values.empty() || human_values.empty()) {
    throw DataError("compare_groups(" + metric_name +
                    "): both groups must be non-empty");
  }
  GroupComparison row;
  row.metric_name = metric_name;
  row.ai_n = ai_values.size();
  row.human_n = human_values.size();
  row.ai_mean = mean(ai_values);
  row.human_mean = mean(human_values);
  if (ai_values.size() >= 2) row.ai_sd = sample_sd(ai_values);
  if (human_values.size() >= 2) row.human_sd = sample_sd(human_values);
  row.diff = row.ai_mean - row.human_mean;
  if (row.human_mean != 0.0) {
    row.impr_pct = 100.0 * row.diff / row.human_mean;
  }

  if (ai_values.size() < 2 || human_values.size() < 2) {
    row.note = "untestable: a group has fewer than 2 observations";
    return row;
  }

  row.mwu = mann_whitney_u(ai_values, human_values);
  try {
    row.welch = welch_t(ai_values, human_values);
  } catch (const DataError&) {
    row.note = "untestable: both groups have zero variance";
    return row;
  }
  try {
    row.d = cohens_d_ci(ai_values, human_values, opts.bootstrap);
    row.label = effect_label(row.d->d);
  } catch (const DataError&) {
    row.note = "untestable: pooled standard deviation is zero";
    return row;
  }
  row.testable = true;
  return row;
}

}  // namespace ivq::stats
