#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ivq/corpus/segment.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/lexical/tokenizer.hpp"
#include "ivq/stats/descriptive.hpp"

namespace ivq::lexical {

struct ScopeLengthStats {
  /// Tokens per sentence, in segmentation order for the scope.
  std::vector<std::size_t> samples;
  /// Absent when the scope has zero sentences.
  std::optional<stats::SummaryStats> stats;
};

struct LengthEntry {
  std::string transcript_id;
  std::array<ScopeLengthStats, 3> by_scope;  // indexed by Scope
};

struct LengthReport {
  std::vector<LengthEntry> entries;  // corpus order
};

/// Tokens-per-sentence samples per transcript for each scope. A role with no
/// sentences yields an empty sample set and absent stats.
LengthReport sentence_length_stats(const std::vector<corpus::Transcript>& corpus,
                                   const WordpieceTokenizer& tokenizer,
                                   const corpus::SegmentationOptions& seg = {},
                                   unsigned threads = 1);

}  // namespace ivq::lexical
