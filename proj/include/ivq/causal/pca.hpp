#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ivq::causal {

struct PcaResult {
  /// One column per retained component, unit length, sign fixed so each
  /// component's largest-magnitude loading is positive.
  Eigen::MatrixXd components;   // dim x k
  Eigen::VectorXd eigenvalues;  // k, descending
  Eigen::MatrixXd scores;       // n x k projections of the centered data
  std::size_t effective_rank = 0;  // components with non-negligible variance
  std::vector<std::string> flags;  // padded columns when rank < k
};

/// Principal components of the rows of `data` (n x dim): center columns,
/// eigendecompose the covariance, project onto the top-k eigenvectors.
/// Requires n >= 2 and dim >= 1; components beyond the effective rank are
/// zero-padded and flagged.
PcaResult topic_pca(const Eigen::MatrixXd& data, std::size_t k = 3);

}  // namespace ivq::causal
