#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivq/corpus/segment.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/semantic/embedding.hpp"

namespace ivq::semantic {

/// Model key for the per-transcript unweighted mean across providers.
inline constexpr const char* kCrossModel = "cross";

struct TranscriptSimilarity {
  std::string transcript_id;
  std::string model;
  std::size_t n_interviewer = 0;  // sentence counts, model-independent
  std::size_t n_interviewee = 0;
  /// Present iff n_interviewer >= 2.
  std::optional<double> interviewer_internal;
  /// Present iff n_interviewee >= 2.
  std::optional<double> interviewee_internal;
  /// Present iff both roles have at least one sentence.
  std::optional<double> cross;
};

struct SimilarityReport {
  /// Provider rows in provider order, then the cross pseudo-model; corpus
  /// order within each model.
  std::vector<TranscriptSimilarity> rows;
};

/// Cosine of the angle between two vectors, clamped to [-1, 1]. Throws
/// DataError on a zero-norm vector or mismatched dimensions.
double cosine(std::span<const float> a, std::span<const float> b);
double cosine(std::span<const double> a, std::span<const double> b);

/// Mean cosine over all unordered pairs; absent when fewer than 2 vectors.
std::optional<double> internal_similarity(
    std::span<const SentenceEmbedding> embeds);

/// Mean cosine over the full bipartite set of pairs; absent when either side
/// is empty.
std::optional<double> cross_similarity(std::span<const SentenceEmbedding> a,
                                       std::span<const SentenceEmbedding> b);

/// Segments the corpus once, embeds each provider's sentences (cache files
/// live under cache_dir, one per model), and emits the three aggregates per
/// transcript and model plus the cross pseudo-model.
SimilarityReport similarity_report(
    const std::vector<corpus::Transcript>& corpus,
    const std::vector<EmbeddingProviderSpec>& providers,
    const std::string& cache_dir, const corpus::SegmentationOptions& seg = {},
    unsigned threads = 1);

}  // namespace ivq::semantic
