#include "ivq/causal/estimate.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include "ivq/error.hpp"

namespace ivq::causal {

AteEstimate estimate_ate(const std::string& outcome_name,
                         const std::vector<double>& outcome,
                         const CovariateMatrix& m, const MatchResult& match) {
  const std::size_t n = m.rows();
  if (outcome.size() != n || match.unit_weight.size() != n) {
    throw DataError("estimate_ate: outcome/matrix/match sizes disagree");
  }

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (match.unit_weight[i] > 0.0) rows.push_back(i);
  }
  const auto p = static_cast<Eigen::Index>(2 + m.cols());  // 1, T, X
  if (rows.size() <= static_cast<std::size_t>(p)) {
    throw DataError("estimate_ate: matched sample too small (" +
                    std::to_string(rows.size()) + " rows for " +
                    std::to_string(p) + " coefficients)");
  }

  const auto nm = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd z(nm, p);
  Eigen::VectorXd y(nm), w(nm);
  for (Eigen::Index r = 0; r < nm; ++r) {
    const std::size_t i = rows[static_cast<std::size_t>(r)];
    z(r, 0) = 1.0;
    z(r, 1) = static_cast<double>(m.treatment[i]);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      z(r, static_cast<Eigen::Index>(2 + c)) =
          m.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    }
    y(r) = outcome[i];
    w(r) = match.unit_weight[i];
  }

  // Rank check on the weighted design; name the offending columns.
  const Eigen::MatrixXd zw = w.cwiseSqrt().asDiagonal() * z;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(zw);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::vector<std::string> names = {"intercept", "treatment"};
    for (const auto& c : m.columns) names.push_back(c);
    const auto perm = qr.colsPermutation().indices();
    std::string collinear;
    for (Eigen::Index i = qr.rank(); i < p; ++i) {
      if (!collinear.empty()) collinear += ", ";
      collinear += names[static_cast<std::size_t>(perm(i))];
    }
    throw DataError("estimate_ate: design matrix is rank-deficient; "
                    "collinear columns: " + collinear);
  }

  const Eigen::MatrixXd a = z.transpose() * w.asDiagonal() * z;
  const Eigen::VectorXd beta =
      a.ldlt().solve(z.transpose() * (w.asDiagonal() * y));
  const Eigen::VectorXd resid = y - z * beta;

  // HC0 sandwich: bread = A^-1, meat = sum w_i^2 e_i^2 z_i z_i'.
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index r = 0; r < nm; ++r) {
    const double s = w(r) * resid(r);
    meat.noalias() += (s * s) * z.row(r).transpose() * z.row(r);
  }
  const Eigen::MatrixXd bread = a.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov = bread * meat * bread;

  AteEstimate est;
  est.outcome_name = outcome_name;
  est.ate = beta(1);
  est.intercept = beta(0);
  for (Eigen::Index c = 2; c < p; ++c) {
    est.covariate_coefficients.push_back(beta(c));
  }
  est.se = std::sqrt(std::max(0.0, cov(1, 1)));
  est.residual_variance = (w.array() * resid.array().square()).sum() / w.sum();
  if (est.se > 0.0) {
    est.t = est.ate / est.se;
    const boost::math::normal_distribution<double> nd;
    est.p = 2.0 * boost::math::cdf(boost::math::complement(nd, std::abs(est.t)));
    est.p = std::min(est.p, 1.0);
  } else {
    // Degenerate (noise-free) fit: report the limit values.
    est.t = est.ate == 0.0 ? 0.0
                           : std::copysign(
                                 std::numeric_limits<double>::infinity(),
                                 est.ate);
    est.p = est.ate == 0.0 ? 1.0 : 0.0;
  }
  est.ci_95 = {est.ate - 1.96 * est.se, est.ate + 1.96 * est.se};
  est.significant = est.p < 0.05;
  return est;
}

AteEstimate placebo_test(const std::string& outcome_name,
                         const std::vector<double>& outcome,
                         const CovariateMatrix& m, const MatchResult& match) {
  AteEstimate est = estimate_ate(outcome_name, outcome, m, match);
  est.placebo_pass = est.p > 0.05;
  return est;
}

}  // namespace ivq::causal
