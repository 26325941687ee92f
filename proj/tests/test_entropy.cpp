#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>

#include "ivq/error.hpp"
#include "ivq/lexical/entropy.hpp"
#include "ivq/lexical/length_stats.hpp"
#include "ivq/rng.hpp"
#include "support.hpp"

using namespace ivq;
using namespace ivq::lexical;

TEST_SUITE_BEGIN("entropy");

// Direct -sum p log2 p evaluation, kept deliberately naive.
static double entropy_oracle(const std::vector<TokenId>& tokens) {
  std::map<TokenId, std::size_t> counts;
  for (const auto t : tokens) ++counts[t];
  const double n = static_cast<double>(tokens.size());
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

static const WordpieceTokenizer& fixture_tokenizer() {
  static WordpieceTokenizer tok = WordpieceTokenizer::load(
      {test::fixture_path("vocab.txt"), "test-vocab"});
  return tok;
}

TEST_CASE("shannon_entropy matches the naive evaluation") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t len = 10 + rng.next_below(2000);
    const std::size_t vocab = 2 + rng.next_below(300);
    std::vector<TokenId> tokens(len);
    for (auto& t : tokens) {
      t = static_cast<TokenId>(rng.next_below(vocab));
    }
    CHECK(std::abs(shannon_entropy(tokens) - entropy_oracle(tokens)) < 1e-9);
  }
}

TEST_CASE("entropy endpoints are exact") {
  std::vector<TokenId> constant(64, 7);
  CHECK(shannon_entropy(constant) == 0.0);

  std::vector<TokenId> uniform;
  for (TokenId t = 0; t < 16; ++t) {
    for (int k = 0; k < 5; ++k) uniform.push_back(t);
  }
  CHECK(std::abs(shannon_entropy(uniform) - 4.0) < 1e-12);

  std::vector<TokenId> empty;
  CHECK_THROWS_AS(shannon_entropy(empty), DataError);
}

TEST_CASE("entropy is bounded by the distinct-token log") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<TokenId> tokens(50 + rng.next_below(500));
    std::map<TokenId, bool> distinct;
    for (auto& t : tokens) {
      t = static_cast<TokenId>(rng.next_below(40));
      distinct[t] = true;
    }
    const double h = shannon_entropy(tokens);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(distinct.size())) + 1e-12);
  }
}

TEST_CASE("truncate keeps the leading prefix") {
  TokenSequence seq;
  seq.transcript_id = "t";
  seq.scope = Scope::Overall;
  seq.tokens = {5, 6, 7, 8, 9};
  const auto cut = truncate(seq, 3);
  CHECK(cut.tokens == std::vector<TokenId>{5, 6, 7});
  CHECK(cut.transcript_id == "t");
  CHECK(truncate(seq, 5).tokens.size() == 5);
  CHECK_THROWS_AS(truncate(seq, 0), DataError);
  CHECK_THROWS_AS(truncate(seq, 6), DataError);
}

TEST_CASE("corpus_min_length is the pooled minimum") {
  const auto seq = [](const char* id, std::size_t n) {
    TokenSequence s;
    s.transcript_id = id;
    s.scope = Scope::InterviewerOnly;
    s.tokens.assign(n, 1);
    return s;
  };
  CHECK(corpus_min_length({seq("a", 4), seq("b", 9), seq("c", 6)},
                          Scope::InterviewerOnly) == 4);
  CHECK_THROWS_AS(corpus_min_length({}, Scope::InterviewerOnly), DataError);
  CHECK_THROWS_AS(corpus_min_length({seq("a", 0)}, Scope::InterviewerOnly),
                  DataError);
  CHECK_THROWS_AS(corpus_min_length({seq("a", 4)}, Scope::Overall), DataError);
}

static corpus::Transcript text_transcript(const std::string& id,
                                          const std::string& q,
                                          const std::string& a) {
  corpus::Transcript t;
  t.id = id;
  t.source = corpus::Source::AI;
  t.language = "en";
  t.turns = {{corpus::Role::Interviewer, q, 0},
             {corpus::Role::Interviewee, a, 1}};
  t.char_count = corpus::count_chars(t);
  return t;
}

TEST_CASE("entropy_report truncates every scope to its pooled minimum") {
  const auto& tok = fixture_tokenizer();
  const std::vector<corpus::Transcript> corpus = {
      text_transcript("a", "Could you tell me about your work today?",
                      "I manage a small data team for a research group."),
      text_transcript("b", "Thank you for joining us.",
                      "Glad to be here with you."),
  };
  const auto report = entropy_report(corpus, tok, LMinMode::PerScope);
  REQUIRE(report.entries.size() == 2);
  for (int s = 0; s < 3; ++s) {
    REQUIRE(report.l_min[s].has_value());
    std::size_t smallest_pre = SIZE_MAX;
    for (const auto& e : report.entries) {
      REQUIRE(e.by_scope[s].has_value());
      CHECK(e.by_scope[s]->truncated_length == *report.l_min[s]);
      CHECK(e.by_scope[s]->pre_truncation_length >= *report.l_min[s]);
      smallest_pre = std::min(smallest_pre, e.by_scope[s]->pre_truncation_length);
    }
    CHECK(smallest_pre == *report.l_min[s]);
  }
  // Three scopes may have three different minima under PerScope pooling.
  CHECK(report.warnings.empty());
}

TEST_CASE("entropy_report Global mode uses one minimum everywhere") {
  const auto& tok = fixture_tokenizer();
  const std::vector<corpus::Transcript> corpus = {
      text_transcript("a", "Could you tell me about your work today?",
                      "I manage a small data team for a research group."),
      text_transcript("b", "Thank you for joining us.",
                      "Glad to be here with you."),
  };
  const auto report = entropy_report(corpus, tok, LMinMode::Global);
  std::size_t the_min = SIZE_MAX;
  for (int s = 0; s < 3; ++s) {
    REQUIRE(report.l_min[s].has_value());
    the_min = std::min(the_min, *report.l_min[s]);
  }
  for (int s = 0; s < 3; ++s) CHECK(*report.l_min[s] == the_min);
  for (const auto& e : report.entries) {
    for (int s = 0; s < 3; ++s) {
      CHECK(e.by_scope[s]->truncated_length == the_min);
    }
  }
}

TEST_CASE("entropy_report excludes empty scopes with a warning") {
  const auto& tok = fixture_tokenizer();
  corpus::Transcript lopsided;
  lopsided.id = "lopsided";
  lopsided.source = corpus::Source::Human;
  lopsided.turns = {{corpus::Role::Interviewer, "Just one question?", 0}};
  lopsided.char_count = corpus::count_chars(lopsided);
  const std::vector<corpus::Transcript> corpus = {
      text_transcript("full", "Could you tell me more?", "Certainly, I can."),
      lopsided,
  };
  const auto report = entropy_report(corpus, tok);
  const auto s = static_cast<int>(Scope::IntervieweeOnly);
  REQUIRE(report.l_min[s].has_value());  // "full" still contributes
  CHECK_FALSE(report.entries[1].by_scope[s].has_value());
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].transcript_id == "lopsided");
  CHECK(report.warnings[0].scope == Scope::IntervieweeOnly);
}

TEST_CASE("entropy values in the report match direct recomputation") {
  const auto& tok = fixture_tokenizer();
  const std::vector<corpus::Transcript> corpus = {
      text_transcript("a", "Could you tell me about your work today?",
                      "I manage a small data team for a research group."),
      text_transcript("b", "Thank you for joining us today.",
                      "Glad to be here with all of you."),
  };
  const auto report = entropy_report(corpus, tok);
  const auto overall = static_cast<int>(Scope::Overall);
  const auto l = *report.l_min[overall];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto tokens = tok.tokenize(corpus[i].full_text());
    tokens.resize(l);
    CHECK(std::abs(report.entries[i].by_scope[overall]->entropy_bits -
                   entropy_oracle(tokens)) < 1e-12);
  }
}

TEST_CASE("sentence_length_stats counts tokens per sentence by scope") {
  const auto& tok = fixture_tokenizer();
  const auto t = text_transcript("t", "How are you? Tell me more.",
                                 "I am fine. Thank you for asking. Really.");
  const auto report = sentence_length_stats({t}, tok);
  REQUIRE(report.entries.size() == 1);
  const auto& entry = report.entries[0];
  const auto& overall = entry.by_scope[static_cast<int>(Scope::Overall)];
  const auto& inter = entry.by_scope[static_cast<int>(Scope::InterviewerOnly)];
  const auto& intv = entry.by_scope[static_cast<int>(Scope::IntervieweeOnly)];
  CHECK(overall.samples.size() == 5);
  CHECK(inter.samples.size() == 2);
  CHECK(intv.samples.size() == 3);
  CHECK(inter.samples[0] == tok.tokenize("How are you").size());
  CHECK(inter.samples[1] == tok.tokenize("Tell me more").size());
  CHECK(intv.samples[2] == tok.tokenize("Really").size());
  REQUIRE(overall.stats.has_value());
  double total = 0.0;
  for (const auto s : overall.samples) total += static_cast<double>(s);
  CHECK(std::abs(overall.stats->mean - total / 5.0) < 1e-12);
  CHECK(overall.stats->n == 5);
}

TEST_CASE("sentence_length_stats leaves empty scopes absent") {
  const auto& tok = fixture_tokenizer();
  corpus::Transcript one_sided;
  one_sided.id = "o";
  one_sided.source = corpus::Source::AI;
  one_sided.turns = {{corpus::Role::Interviewer, "Hello there.", 0}};
  one_sided.char_count = corpus::count_chars(one_sided);
  const auto report = sentence_length_stats({one_sided}, tok);
  const auto& entry = report.entries[0];
  CHECK(entry.by_scope[static_cast<int>(Scope::IntervieweeOnly)].samples.empty());
  CHECK_FALSE(
      entry.by_scope[static_cast<int>(Scope::IntervieweeOnly)].stats.has_value());
  CHECK(entry.by_scope[static_cast<int>(Scope::InterviewerOnly)].stats.has_value());
}

TEST_SUITE_END();
