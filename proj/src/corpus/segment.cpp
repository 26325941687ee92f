#include "ivq/corpus/segment.hpp"

#include <array>

#include "ivq/unicode.hpp"

namespace ivq::corpus {

namespace {

bool is_delimiter(char32_t cp, const std::u32string& delims) {
  return delims.find(cp) != std::u32string::npos;
}

}  // namespace

std::vector<Sentence> segment_sentences(const Transcript& t,
                                        const SegmentationOptions& opts) {
  std::vector<Sentence> out;
  std::array<std::size_t, 2> next_seq{0, 0};

  for (const auto& turn : t.turns) {
    std::string fragment;
    auto flush = [&] {
      std::string text = unicode::trim(fragment);
      fragment.clear();
      if (text.empty()) return;
      Sentence s;
      s.transcript_id = t.id;
      s.role = turn.role;
      s.seq = next_seq[static_cast<std::size_t>(turn.role)]++;
      s.text = std::move(text);
      out.push_back(std::move(s));
    };

    std::size_t pos = 0;
    bool in_delimiter_run = false;
    while (pos < turn.text.size()) {
      const std::size_t start = pos;
      const char32_t cp = unicode::decode(turn.text, pos);
      if (is_delimiter(cp, opts.delimiters)) {
        if (!in_delimiter_run) {
          flush();
          in_delimiter_run = true;
        }
        // further delimiters in the run are dropped
      } else {
        in_delimiter_run = false;
        fragment.append(turn.text, start, pos - start);
      }
    }
    flush();  // turn boundary ends the current sentence
  }
  return out;
}

SegmentationResult segment_corpus(const std::vector<Transcript>& transcripts,
                                  const SegmentationOptions& opts) {
  SegmentationResult result;
  for (const auto& t : transcripts) {
    auto sentences = segment_sentences(t, opts);
    std::array<bool, 2> seen{false, false};
    for (const auto& s : sentences) seen[static_cast<std::size_t>(s.role)] = true;
    for (Role r : {Role::Interviewer, Role::Interviewee}) {
      if (!seen[static_cast<std::size_t>(r)]) {
        result.empty_roles.push_back({t.id, r});
      }
    }
    result.sentences.insert(result.sentences.end(),
                            std::make_move_iterator(sentences.begin()),
                            std::make_move_iterator(sentences.end()));
  }
  return result;
}

}  // namespace ivq::corpus
