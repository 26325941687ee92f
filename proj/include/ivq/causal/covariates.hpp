#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ivq/corpus/segment.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/lexical/tokenizer.hpp"
#include "ivq/semantic/embedding.hpp"

namespace ivq::causal {

/// Transcript-level design matrix. Rows align with `ids` and `treatment`;
/// column names parallel the columns of `x`.
struct CovariateMatrix {
  std::vector<std::string> ids;
  std::vector<int> treatment;  // 1 = AI, 0 = Human
  std::vector<std::string> columns;
  Eigen::MatrixXd x;  // ids.size() rows, columns.size() cols
  std::vector<std::string> warnings;  // excluded transcripts
  std::vector<std::string> notes;     // transform/rank flags

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return columns.size(); }
};

/// Fraction of decimal digits among non-whitespace characters over all turn
/// texts. Throws DataError when there is no non-whitespace character.
double digit_ratio(const corpus::Transcript& t);

/// Base covariates: total_tokens (pre-truncation, overall scope),
/// total_sentences, and PC1-3 of the per-transcript mean sentence embedding.
/// Transcripts with no embedded sentences are excluded with a warning. Throws
/// DataError unless both treatment levels survive.
CovariateMatrix build_covariates(
    const std::vector<corpus::Transcript>& corpus,
    const std::vector<semantic::SentenceEmbedding>& embeddings,
    const lexical::WordpieceTokenizer& tokenizer,
    const corpus::SegmentationOptions& seg = {}, unsigned threads = 1);

}  // namespace ivq::causal
