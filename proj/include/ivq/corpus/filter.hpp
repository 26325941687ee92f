#pragma once

#include <vector>

#include "ivq/corpus/types.hpp"

namespace ivq::corpus {

bool matches(const Transcript& t, const CorpusFilter& f);

/// Keeps transcripts with char_count strictly greater than min_chars, a
/// matching language tag, and all required roles present. Order preserved;
/// an empty result is legal. Idempotent.
std::vector<Transcript> filter_corpus(const std::vector<Transcript>& transcripts,
                                      const CorpusFilter& f);

}  // namespace ivq::corpus
