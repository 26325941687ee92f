#pragma once

// Shared helpers for the unit and acceptance suites: fixture paths, scratch
// directories and synthetic corpus / embedding generation.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ivq/corpus/segment.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/rng.hpp"
#include "ivq/semantic/embedding.hpp"
#include "ivq/text_io.hpp"
#include "ivq/unicode.hpp"

#ifndef IVQ_FIXTURE_DIR
#error "IVQ_FIXTURE_DIR must be defined by the build"
#endif
#ifndef IVQ_TEST_TMP
#error "IVQ_TEST_TMP must be defined by the build"
#endif

namespace ivq::test {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(IVQ_FIXTURE_DIR) / name;
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path tmp_dir(const std::string& name) {
  const auto dir = std::filesystem::path(IVQ_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Alphabetic full-word vocabulary entries (no continuations, no specials),
/// used to synthesize text that tokenizes one token per word.
inline std::vector<std::string> vocab_words() {
  std::vector<std::string> words;
  std::istringstream in(io::read_file(fixture_path("vocab.txt")));
  std::string line;
  while (std::getline(in, line)) {
    line = unicode::trim(line);
    if (line.size() < 2 || line.rfind("##", 0) == 0 || line.front() == '[') {
      continue;
    }
    bool alpha = true;
    for (const char c : line) {
      if (!std::isalpha(static_cast<unsigned char>(c))) alpha = false;
    }
    if (alpha) words.push_back(line);
  }
  return words;
}

inline std::string make_sentence(Rng& rng, const std::vector<std::string>& pool,
                                 std::size_t n_words) {
  std::string s;
  for (std::size_t i = 0; i < n_words; ++i) {
    if (i) s += ' ';
    s += pool[rng.next_below(pool.size())];
  }
  s += '.';
  return s;
}

struct SyntheticCorpusOptions {
  std::size_t interviewer_sentences = 4;
  std::size_t interviewee_sentences = 6;
  std::size_t words_lo = 6;
  std::size_t words_hi = 12;
  std::size_t sentences_per_turn = 2;
};

/// Alternating-turn transcript of delimiter-terminated sentences drawn from
/// the vocabulary pool.
inline corpus::Transcript make_transcript(const std::string& id,
                                          corpus::Source source, Rng& rng,
                                          const std::vector<std::string>& pool,
                                          const SyntheticCorpusOptions& o = {}) {
  corpus::Transcript t;
  t.id = id;
  t.source = source;
  t.language = "en";
  std::size_t left_i = o.interviewer_sentences;
  std::size_t left_e = o.interviewee_sentences;
  bool interviewer = true;
  std::size_t index = 0;
  while (left_i + left_e > 0) {
    auto& left = interviewer ? left_i : left_e;
    if (left == 0) {
      interviewer = !interviewer;
      continue;
    }
    const std::size_t take = std::min(o.sentences_per_turn, left);
    std::string text;
    for (std::size_t s = 0; s < take; ++s) {
      if (s) text += ' ';
      text += make_sentence(
          rng, pool, o.words_lo + rng.next_below(o.words_hi - o.words_lo + 1));
    }
    t.turns.push_back({interviewer ? corpus::Role::Interviewer
                                   : corpus::Role::Interviewee,
                       text, index++});
    left -= take;
    interviewer = !interviewer;
  }
  t.char_count = corpus::count_chars(t);
  return t;
}

/// Deterministic unit-norm embedding for one (model, key) pair.
inline std::vector<float> synth_vector(const std::string& model,
                                       const semantic::EmbeddingKey& key,
                                       std::size_t dim) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](const std::string& s) {
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
  };
  mix(model);
  mix(key.transcript_id);
  mix(corpus::to_string(key.role));
  mix(std::to_string(key.seq));
  Rng rng(h);
  std::vector<float> v(dim);
  double norm_sq = 0.0;
  for (auto& x : v) {
    x = static_cast<float>(rng.next_normal());
    norm_sq += static_cast<double>(x) * static_cast<double>(x);
  }
  const auto inv = static_cast<float>(1.0 / std::sqrt(norm_sq));
  for (auto& x : v) x *= inv;
  return v;
}

/// Precomputed-provider file covering every sentence of the corpus.
inline void write_embedding_file(const std::vector<corpus::Transcript>& corpus,
                                 const std::string& model, std::size_t dim,
                                 const std::filesystem::path& path,
                                 const corpus::SegmentationOptions& seg = {}) {
  semantic::EmbeddingCache cache;
  cache.model_name = model;
  cache.dimension = dim;
  for (const auto& t : corpus) {
    for (const auto& s : corpus::segment_sentences(t, seg)) {
      const semantic::EmbeddingKey key{s.transcript_id, s.role, s.seq};
      cache.vectors[key] = synth_vector(model, key, dim);
    }
  }
  semantic::write_cache(path.string(), cache);
}

}  // namespace ivq::test
