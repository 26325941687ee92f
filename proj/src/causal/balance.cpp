#include "ivq/causal/balance.hpp"

#include <cmath>

#include "ivq/error.hpp"

namespace ivq::causal {
namespace {

struct WeightedMoments {
  double mean = 0.0;
  double var = 0.0;  // sum w (x-mean)^2 / (sum w - 1)
  double total_weight = 0.0;
};

WeightedMoments moments(const CovariateMatrix& m, std::size_t col,
                        const std::vector<double>& weights, int level) {
  WeightedMoments out;
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.treatment[i] != level || weights[i] <= 0.0) continue;
    sum += weights[i] * m.x(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(col));
    out.total_weight += weights[i];
  }
  if (out.total_weight <= 0.0) return out;
  out.mean = sum / out.total_weight;
  double ss = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.treatment[i] != level || weights[i] <= 0.0) continue;
    const double d = m.x(static_cast<Eigen::Index>(i),
                         static_cast<Eigen::Index>(col)) -
                     out.mean;
    ss += weights[i] * d * d;
  }
  out.var = out.total_weight > 1.0 ? ss / (out.total_weight - 1.0) : 0.0;
  return out;
}

}  // namespace

std::optional<double> smd(double mean_t, double mean_c, double var_t,
                          double var_c) {
  const double pooled = std::sqrt((var_t + var_c) / 2.0);
  if (pooled <= 0.0) return std::nullopt;
  return (mean_t - mean_c) / pooled;
}

BalanceReport smd_balance(const CovariateMatrix& m, const MatchResult& match) {
  if (match.unit_weight.size() != m.rows()) {
    throw DataError("smd_balance: matrix and match sizes disagree");
  }
  const std::vector<double> unit(m.rows(), 1.0);

  BalanceReport report;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    CovariateBalance row;
    row.column = m.columns[c];

    const auto pre_t = moments(m, c, unit, 1);
    const auto pre_c = moments(m, c, unit, 0);
    row.smd_pre = smd(pre_t.mean, pre_c.mean, pre_t.var, pre_c.var);

    const auto post_t = moments(m, c, match.unit_weight, 1);
    const auto post_c = moments(m, c, match.unit_weight, 0);
    row.smd_post = smd(post_t.mean, post_c.mean, post_t.var, post_c.var);

    if (!row.smd_pre || !row.smd_post) {
      row.flag = "SMD undefined (zero pooled spread)";
    } else if (*row.smd_pre != 0.0) {
      row.pct_improvement =
          100.0 * (1.0 - std::abs(*row.smd_post) / std::abs(*row.smd_pre));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ivq::causal
