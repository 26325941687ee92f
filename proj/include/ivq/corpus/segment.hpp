#pragma once

#include <string>
#include <vector>

#include "ivq/corpus/types.hpp"

namespace ivq::corpus {

struct SegmentationOptions {
  /// Sentence delimiters. A maximal run of these characters ends a sentence;
  /// the delimiters themselves are dropped. Extendable (e.g. with U+3002) for
  /// non-English corpora.
  std::u32string delimiters = U".!?";
};

struct SegmentationFlag {
  std::string transcript_id;
  Role role;
};

struct SegmentationResult {
  std::vector<Sentence> sentences;
  /// (transcript, role) pairs that produced zero sentences; downstream
  /// similarity aggregates will be absent for them.
  std::vector<SegmentationFlag> empty_roles;
};

/// Splits each turn at maximal runs of the delimiter characters. Turn
/// boundaries always start a new sentence; whitespace-only fragments are
/// discarded; per-role seq numbering is dense from 0.
std::vector<Sentence> segment_sentences(const Transcript& t,
                                        const SegmentationOptions& opts = {});

SegmentationResult segment_corpus(const std::vector<Transcript>& transcripts,
                                  const SegmentationOptions& opts = {});

}  // namespace ivq::corpus
