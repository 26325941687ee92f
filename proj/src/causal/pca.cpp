#include "ivq/causal/pca.hpp"

#include <algorithm>

#include "ivq/error.hpp"

namespace ivq::causal {

PcaResult topic_pca(const Eigen::MatrixXd& data, std::size_t k) {
  const auto n = static_cast<std::size_t>(data.rows());
  const auto dim = static_cast<std::size_t>(data.cols());
  if (n < 2) throw DataError("topic_pca: need at least 2 rows");
  if (dim < 1) throw DataError("topic_pca: need at least 1 column");
  if (k < 1) throw DataError("topic_pca: need at least 1 component");

  Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DataError("topic_pca: eigendecomposition failed");
  }
  // Eigen reports ascending eigenvalues; walk from the back.
  const Eigen::VectorXd evs = solver.eigenvalues();
  const Eigen::MatrixXd vecs = solver.eigenvectors();
  const double tol = std::max(1e-12, 1e-12 * std::abs(evs(evs.size() - 1)));

  PcaResult out;
  out.components = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(k));
  out.eigenvalues = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k && c < dim; ++c) {
    const Eigen::Index src = evs.size() - 1 - static_cast<Eigen::Index>(c);
    if (evs(src) <= tol) break;
    Eigen::VectorXd v = vecs.col(src);
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    if (v(argmax) < 0.0) v = -v;
    out.components.col(static_cast<Eigen::Index>(c)) = v;
    out.eigenvalues(static_cast<Eigen::Index>(c)) = evs(src);
    ++out.effective_rank;
  }
  for (std::size_t c = out.effective_rank; c < k; ++c) {
    out.flags.push_back("PC" + std::to_string(c + 1) +
                        " padded with zeros (rank " +
                        std::to_string(out.effective_rank) + ")");
  }
  out.scores = centered * out.components;
  return out;
}

}  // namespace ivq::causal
