#include "ivq/causal/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "ivq/error.hpp"

namespace ivq::causal {
namespace {

std::vector<double> midranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<double> quantile_transform(std::span<const double> xs) {
  if (xs.empty()) throw DataError("quantile_transform: empty column");
  const boost::math::normal_distribution<double> nd;
  const double n = static_cast<double>(xs.size());
  std::vector<double> out = midranks(xs);
  for (double& r : out) {
    r = boost::math::quantile(nd, (r - 0.5) / n);
  }
  return out;
}

CovariateMatrix transform_covariates(const CovariateMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  const std::size_t k = m.cols();
  if (n < 2) throw DataError("transform_covariates: need at least 2 rows");

  CovariateMatrix out;
  out.ids = m.ids;
  out.treatment = m.treatment;
  out.warnings = m.warnings;
  out.notes = m.notes;

  std::vector<std::pair<std::string, Eigen::VectorXd>> cols;
  for (std::size_t c = 0; c < k; ++c) {
    cols.emplace_back(m.columns[c], m.x.col(static_cast<Eigen::Index>(c)));
  }
  // log1p of the count columns only; components can be negative.
  for (const char* name : {"total_tokens", "total_sentences"}) {
    const auto it = std::find(m.columns.begin(), m.columns.end(), name);
    if (it == m.columns.end()) continue;
    const auto c = static_cast<Eigen::Index>(it - m.columns.begin());
    Eigen::VectorXd v = m.x.col(c);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (v(i) < 0.0) {
        throw DataError(std::string("transform_covariates: negative count in "
                                    "column ") + name);
      }
      v(i) = std::log1p(v(i));
    }
    cols.emplace_back(std::string("log1p_") + name, std::move(v));
  }
  for (std::size_t c = 0; c < k; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    cols.emplace_back("sq_" + m.columns[c],
                      m.x.col(ci).cwiseProduct(m.x.col(ci)));
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      cols.emplace_back(
          m.columns[a] + "_x_" + m.columns[b],
          m.x.col(static_cast<Eigen::Index>(a))
              .cwiseProduct(m.x.col(static_cast<Eigen::Index>(b))));
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::VectorXd src = m.x.col(static_cast<Eigen::Index>(c));
    const std::vector<double> scores = quantile_transform(
        std::span<const double>(src.data(), static_cast<std::size_t>(n)));
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scores[static_cast<std::size_t>(i)];
    cols.emplace_back("q_" + m.columns[c], std::move(v));
  }

  out.x.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& [name, v] = cols[c];
    const double mean = v.mean();
    const double sd =
        std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (sd > 0.0) {
      v = (v.array() - mean) / sd;
    } else {
      out.notes.push_back("column " + name +
                          " is constant; standardization skipped");
    }
    out.columns.push_back(name);
    out.x.col(static_cast<Eigen::Index>(c)) = v;
  }
  return out;
}

}  // namespace ivq::causal
