#include "ivq/causal/propensity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ivq/error.hpp"

namespace ivq::causal {
namespace {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

PropensityModel fit_propensity(const CovariateMatrix& m,
                               const PropensityOptions& opts) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  const auto k = static_cast<Eigen::Index>(m.cols());
  if (n == 0) throw DataError("fit_propensity: empty matrix");
  if (n <= k + 1) {
    throw DataError("fit_propensity: need more rows (" + std::to_string(n) +
                    ") than coefficients (" + std::to_string(k + 1) + ")");
  }
  const bool has_t =
      std::find(m.treatment.begin(), m.treatment.end(), 1) != m.treatment.end();
  const bool has_c =
      std::find(m.treatment.begin(), m.treatment.end(), 0) != m.treatment.end();
  if (!has_t || !has_c) {
    throw DataError("fit_propensity: both treatment levels required");
  }

  Eigen::MatrixXd x(n, k + 1);
  x.col(0).setOnes();
  x.rightCols(k) = m.x;
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = static_cast<double>(m.treatment[static_cast<std::size_t>(i)]);
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k + 1);
  PropensityModel model;
  const double w_floor = 1e-10;
  for (unsigned it = 0; it < opts.max_iterations; ++it) {
    Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd mu(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mu(i) = sigmoid(eta(i));
      w(i) = std::max(mu(i) * (1.0 - mu(i)), w_floor);
    }
    // Working response z = eta + (y - mu)/w; solve (X'WX + ridge I) b = X'Wz.
    const Eigen::VectorXd z = eta + (y - mu).cwiseQuotient(w);
    Eigen::MatrixXd xtwx = x.transpose() * w.asDiagonal() * x;
    xtwx.diagonal().array() += opts.ridge;
    const Eigen::VectorXd next =
        xtwx.ldlt().solve(x.transpose() * (w.asDiagonal() * z));

    const double delta = (next - beta).cwiseAbs().maxCoeff();
    beta = next;
    model.iterations = it + 1;
    if (beta.cwiseAbs().maxCoeff() > opts.divergence_limit) {
      throw DataError(
          "fit_propensity: coefficients diverging (perfect separation "
          "suspected); increase the ridge penalty");
    }
    if (delta < opts.tol) {
      model.converged = true;
      break;
    }
  }

  // Standard errors from the final information matrix.
  {
    Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mu = sigmoid(eta(i));
      w(i) = std::max(mu * (1.0 - mu), w_floor);
    }
    Eigen::MatrixXd info = x.transpose() * w.asDiagonal() * x;
    info.diagonal().array() += opts.ridge;
    const Eigen::MatrixXd cov =
        info.ldlt().solve(Eigen::MatrixXd::Identity(k + 1, k + 1));
    model.std_errors.resize(static_cast<std::size_t>(k) + 1);
    for (Eigen::Index i = 0; i <= k; ++i) {
      model.std_errors[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
    }

    model.coefficients.assign(beta.data(), beta.data() + beta.size());
    model.scores.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = std::clamp(sigmoid(eta(i)), opts.score_clip,
                                  1.0 - opts.score_clip);
      model.scores[static_cast<std::size_t>(i)] = s;
      if (s <= opts.boundary_margin || s >= 1.0 - opts.boundary_margin) {
        model.near_boundary.push_back(m.ids[static_cast<std::size_t>(i)]);
      }
    }
  }
  return model;
}

}  // namespace ivq::causal
