#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ivq::lexical {

enum class Scope { Overall, InterviewerOnly, IntervieweeOnly };

const char* to_string(Scope s);

using TokenId = std::uint32_t;

struct TokenSequence {
  std::string transcript_id;
  Scope scope = Scope::Overall;
  std::vector<TokenId> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

struct TokenizerSpec {
  std::filesystem::path vocab_source;  // newline-delimited vocabulary file
  std::string name;                    // identifier used in reports
};

/// Greedy longest-match subword tokenizer over a BERT-style vocabulary file
/// (one token per line, id = line number, "##" marks continuations). Input is
/// pre-split on whitespace, with punctuation and CJK characters isolated as
/// single-character words. Words with no vocabulary cover, or longer than 100
/// characters, map to [UNK]. Tokenization is cased and fully deterministic:
/// the same vocabulary file and text always yield the same ids.
class WordpieceTokenizer {
 public:
  static WordpieceTokenizer load(const TokenizerSpec& spec);

  std::vector<TokenId> tokenize(std::string_view text) const;
  std::vector<std::string> tokenize_to_strings(std::string_view text) const;

  const std::string& token_text(TokenId id) const { return vocab_[id]; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::string& name() const { return name_; }

 private:
  WordpieceTokenizer() = default;

  std::vector<TokenId> tokenize_word(const std::u32string& word) const;

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId unk_id_ = 0;
  std::string name_;
};

}  // namespace ivq::lexical
