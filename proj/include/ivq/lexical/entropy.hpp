#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivq/corpus/types.hpp"
#include "ivq/lexical/tokenizer.hpp"

namespace ivq::lexical {

/// How the truncation length is pooled. PerScope computes one minimum per
/// scope across both sources; Global uses a single minimum across every
/// (transcript, scope) sequence.
enum class LMinMode { PerScope, Global };

struct ScopeEntropy {
  double entropy_bits = 0.0;
  std::size_t pre_truncation_length = 0;
  std::size_t truncated_length = 0;  // == the scope's pooled minimum
};

struct EntropyWarning {
  std::string transcript_id;
  Scope scope;
  std::string message;
};

struct EntropyReport {
  /// Pooled minimum token count per scope, indexed by Scope. Absent when no
  /// transcript contributed a sequence to that scope.
  std::array<std::optional<std::size_t>, 3> l_min;

  struct Entry {
    std::string transcript_id;
    std::array<std::optional<ScopeEntropy>, 3> by_scope;
  };
  std::vector<Entry> entries;  // input order
  std::vector<EntropyWarning> warnings;
};

/// Minimum sequence length across `sequences`, which must all carry `scope`.
/// Throws DataError on an empty list or any empty sequence.
std::size_t corpus_min_length(const std::vector<TokenSequence>& sequences,
                              Scope scope);

/// First `l_min` tokens, order preserved. Requires 1 <= l_min <= len(seq);
/// sequences are never padded.
TokenSequence truncate(const TokenSequence& seq, std::size_t l_min);

/// Shannon entropy in bits of the empirical token distribution.
/// Throws DataError on an empty sequence.
double shannon_entropy(std::span<const TokenId> tokens);
double shannon_entropy(const TokenSequence& seq);

/// Tokenizes every transcript in three scopes (overall text, interviewer
/// text, interviewee text), truncates each scope to its pooled minimum
/// length, and computes entropies. The overall scope tokenizes the turn
/// texts joined in original order. Transcripts with no tokens in a scope are
/// excluded from that scope with a warning.
EntropyReport entropy_report(const std::vector<corpus::Transcript>& corpus,
                             const WordpieceTokenizer& tokenizer,
                             LMinMode mode = LMinMode::PerScope,
                             unsigned threads = 1);

}  // namespace ivq::lexical
