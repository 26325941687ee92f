#include "ivq/lexical/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ivq/error.hpp"
#include "ivq/parallel.hpp"

namespace ivq::lexical {

std::size_t corpus_min_length(const std::vector<TokenSequence>& sequences,
                              Scope scope) {
  if (sequences.empty()) {
    throw DataError("corpus_min_length: no sequences");
  }
  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  for (const auto& seq : sequences) {
    if (seq.scope != scope) {
      throw DataError("corpus_min_length: sequence for transcript '" +
                      seq.transcript_id + "' has a different scope");
    }
    if (seq.empty()) {
      throw DataError("corpus_min_length: empty sequence for transcript '" +
                      seq.transcript_id + "'");
    }
    min_len = std::min(min_len, seq.size());
  }
  return min_len;
}

TokenSequence truncate(const TokenSequence& seq, std::size_t l_min) {
  if (l_min < 1) throw DataError("truncate: l_min must be >= 1");
  if (l_min > seq.size()) {
    throw DataError("truncate: l_min " + std::to_string(l_min) +
                    " exceeds sequence length " + std::to_string(seq.size()) +
                    " for transcript '" + seq.transcript_id + "'");
  }
  TokenSequence out;
  out.transcript_id = seq.transcript_id;
  out.scope = seq.scope;
  out.tokens.assign(seq.tokens.begin(), seq.tokens.begin() + static_cast<std::ptrdiff_t>(l_min));
  return out;
}

double shannon_entropy(std::span<const TokenId> tokens) {
  if (tokens.empty()) throw DataError("shannon_entropy: empty sequence");
  std::unordered_map<TokenId, std::size_t> counts;
  counts.reserve(tokens.size());
  for (TokenId id : tokens) ++counts[id];

  // H = log2(n) - (1/n) * sum c*log2(c); the c == 1 terms vanish.
  const double n = static_cast<double>(tokens.size());
  double acc = 0.0;
  for (const auto& [id, c] : counts) {
    if (c > 1) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  const double h = std::log2(n) - acc / n;
  return h < 0.0 ? 0.0 : h;  // clamp -0.0 / rounding residue
}

double shannon_entropy(const TokenSequence& seq) {
  return shannon_entropy(std::span<const TokenId>(seq.tokens));
}

EntropyReport entropy_report(const std::vector<corpus::Transcript>& corpus,
                             const WordpieceTokenizer& tokenizer,
                             LMinMode mode, unsigned threads) {
  const std::size_t n = corpus.size();
  EntropyReport report;
  report.entries.resize(n);

  // Phase 1: tokenize all scopes of all transcripts.
  std::vector<std::array<TokenSequence, 3>> sequences(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& t = corpus[i];
    report.entries[i].transcript_id = t.id;
    for (std::size_t s = 0; s < 3; ++s) {
      auto& seq = sequences[i][s];
      seq.transcript_id = t.id;
      seq.scope = static_cast<Scope>(s);
      switch (seq.scope) {
        case Scope::Overall:
          seq.tokens = tokenizer.tokenize(t.full_text());
          break;
        case Scope::InterviewerOnly:
          seq.tokens = tokenizer.tokenize(t.role_text(corpus::Role::Interviewer));
          break;
        case Scope::IntervieweeOnly:
          seq.tokens = tokenizer.tokenize(t.role_text(corpus::Role::Interviewee));
          break;
      }
    }
  });

  // Phase 2: pooled minima over non-empty sequences.
  std::array<std::optional<std::size_t>, 3> l_min;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& seq = sequences[i][s];
      if (seq.empty()) {
        report.warnings.push_back({seq.transcript_id, seq.scope,
                                   "no tokens in scope; excluded"});
        continue;
      }
      if (!l_min[s] || seq.size() < *l_min[s]) l_min[s] = seq.size();
    }
  }
  if (mode == LMinMode::Global) {
    std::optional<std::size_t> global;
    for (const auto& m : l_min) {
      if (m && (!global || *m < *global)) global = m;
    }
    for (auto& m : l_min) {
      if (m) m = global;
    }
  }
  report.l_min = l_min;

  // Phase 3: truncate and compute entropies.
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& seq = sequences[i][s];
      if (seq.empty() || !l_min[s]) continue;
      const TokenSequence cut = truncate(seq, *l_min[s]);
      ScopeEntropy e;
      e.pre_truncation_length = seq.size();
      e.truncated_length = cut.size();
      e.entropy_bits = shannon_entropy(cut);
      report.entries[i].by_scope[s] = e;
    }
  });
  return report;
}

}  // namespace ivq::lexical
