#include "ivq/lexical/length_stats.hpp"

#include "ivq/parallel.hpp"

namespace ivq::lexical {

LengthReport sentence_length_stats(const std::vector<corpus::Transcript>& corpus,
                                   const WordpieceTokenizer& tokenizer,
                                   const corpus::SegmentationOptions& seg,
                                   unsigned threads) {
  LengthReport report;
  report.entries.resize(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto& t = corpus[i];
    auto& entry = report.entries[i];
    entry.transcript_id = t.id;
    for (const auto& sent : corpus::segment_sentences(t, seg)) {
      const std::size_t count = tokenizer.tokenize(sent.text).size();
      entry.by_scope[static_cast<std::size_t>(Scope::Overall)].samples.push_back(count);
      const Scope role_scope = sent.role == corpus::Role::Interviewer
                                   ? Scope::InterviewerOnly
                                   : Scope::IntervieweeOnly;
      entry.by_scope[static_cast<std::size_t>(role_scope)].samples.push_back(count);
    }
    for (auto& scope : entry.by_scope) {
      if (scope.samples.empty()) continue;
      std::vector<double> xs(scope.samples.begin(), scope.samples.end());
      scope.stats = stats::describe(xs);
    }
  });
  return report;
}

}  // namespace ivq::lexical
