#include "ivq/causal/covariates.hpp"

#include <algorithm>
#include <map>

#include "ivq/causal/pca.hpp"
#include "ivq/error.hpp"
#include "ivq/parallel.hpp"
#include "ivq/unicode.hpp"

namespace ivq::causal {

double digit_ratio(const corpus::Transcript& t) {
  std::size_t digits = 0, non_ws = 0;
  for (const auto& turn : t.turns) {
    for (char32_t c : unicode::decode(turn.text)) {
      if (unicode::is_whitespace(c)) continue;
      ++non_ws;
      if (unicode::is_ascii_digit(c)) ++digits;
    }
  }
  if (non_ws == 0) {
    throw DataError("digit_ratio: transcript '" + t.id +
                    "' has no non-whitespace characters");
  }
  return static_cast<double>(digits) / static_cast<double>(non_ws);
}

CovariateMatrix build_covariates(
    const std::vector<corpus::Transcript>& corpus,
    const std::vector<semantic::SentenceEmbedding>& embeddings,
    const lexical::WordpieceTokenizer& tokenizer,
    const corpus::SegmentationOptions& seg, unsigned threads) {
  // Mean sentence embedding per transcript ("topic vector").
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
  for (const auto& e : embeddings) {
    auto& [sum, count] = sums[e.key.transcript_id];
    if (sum.empty()) sum.assign(e.vector.size(), 0.0);
    if (sum.size() != e.vector.size()) {
      throw DataError("build_covariates: inconsistent embedding dimension for '" +
                      e.key.transcript_id + "'");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += static_cast<double>(e.vector[i]);
    }
    ++count;
  }

  CovariateMatrix m;
  std::vector<const corpus::Transcript*> kept;
  for (const auto& t : corpus) {
    auto it = sums.find(t.id);
    if (it == sums.end() || it->second.second == 0) {
      m.warnings.push_back("transcript '" + t.id +
                           "' has no embedded sentences; excluded");
      continue;
    }
    kept.push_back(&t);
  }
  if (kept.size() < 4) {
    throw DataError("build_covariates: need at least 4 transcripts with "
                    "embeddings, have " + std::to_string(kept.size()));
  }

  const std::size_t n = kept.size();
  std::vector<double> total_tokens(n), total_sentences(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& t = *kept[i];
    total_tokens[i] =
        static_cast<double>(tokenizer.tokenize(t.full_text()).size());
    total_sentences[i] =
        static_cast<double>(corpus::segment_sentences(t, seg).size());
  });

  const auto dim =
      static_cast<Eigen::Index>(sums.at(kept[0]->id).first.size());
  Eigen::MatrixXd topic(static_cast<Eigen::Index>(n), dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [sum, count] = sums.at(kept[i]->id);
    for (Eigen::Index d = 0; d < dim; ++d) {
      topic(static_cast<Eigen::Index>(i), d) =
          sum[static_cast<std::size_t>(d)] / static_cast<double>(count);
    }
  }
  const PcaResult pca = topic_pca(topic, 3);
  for (const auto& flag : pca.flags) m.notes.push_back(flag);

  m.columns = {"total_tokens", "total_sentences", "pc1", "pc2", "pc3"};
  m.x.resize(static_cast<Eigen::Index>(n), 5);
  m.ids.reserve(n);
  m.treatment.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    m.ids.push_back(kept[i]->id);
    m.treatment.push_back(kept[i]->source == corpus::Source::AI ? 1 : 0);
    m.x(row, 0) = total_tokens[i];
    m.x(row, 1) = total_sentences[i];
    m.x(row, 2) = pca.scores(row, 0);
    m.x(row, 3) = pca.scores(row, 1);
    m.x(row, 4) = pca.scores(row, 2);
  }

  const bool has_treated =
      std::find(m.treatment.begin(), m.treatment.end(), 1) != m.treatment.end();
  const bool has_control =
      std::find(m.treatment.begin(), m.treatment.end(), 0) != m.treatment.end();
  if (!has_treated || !has_control) {
    throw DataError("build_covariates: both treatment levels (AI and Human) "
                    "are required");
  }
  return m;
}

}  // namespace ivq::causal
