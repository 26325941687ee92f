#include "ivq/corpus/filter.hpp"

namespace ivq::corpus {

bool matches(const Transcript& t, const CorpusFilter& f) {
  if (t.char_count <= f.min_chars) return false;
  if (f.language != "*" && t.language != f.language) return false;
  for (Role r : f.required_roles) {
    if (!t.has_role(r)) return false;
  }
  return true;
}

std::vector<Transcript> filter_corpus(const std::vector<Transcript>& transcripts,
                                      const CorpusFilter& f) {
  std::vector<Transcript> out;
  out.reserve(transcripts.size());
  for (const auto& t : transcripts) {
    if (matches(t, f)) out.push_back(t);
  }
  return out;
}

}  // namespace ivq::corpus
