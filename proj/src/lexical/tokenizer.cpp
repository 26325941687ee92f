#include "ivq/lexical/tokenizer.hpp"

#include <sstream>

#include "ivq/error.hpp"
#include "ivq/text_io.hpp"
#include "ivq/unicode.hpp"

namespace ivq::lexical {

namespace {

constexpr std::size_t kMaxWordChars = 100;

std::string to_utf8(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) unicode::encode(cp, out);
  return out;
}

// Whitespace split with punctuation/CJK isolation, after dropping control
// characters. Mirrors BERT-style pre-tokenization (cased, accents kept).
std::vector<std::u32string> pretokenize(std::string_view text) {
  std::vector<std::u32string> words;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = unicode::decode(text, pos);
    if (unicode::is_control(cp)) continue;
    if (unicode::is_whitespace(cp)) {
      flush();
    } else if (unicode::is_punctuation(cp) || unicode::is_cjk(cp)) {
      flush();
      words.push_back(std::u32string(1, cp));
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return words;
}

}  // namespace

const char* to_string(Scope s) {
  switch (s) {
    case Scope::Overall: return "overall";
    case Scope::InterviewerOnly: return "interviewer";
    default: return "interviewee";
  }
}

WordpieceTokenizer WordpieceTokenizer::load(const TokenizerSpec& spec) {
  WordpieceTokenizer tok;
  tok.name_ = spec.name.empty() ? spec.vocab_source.stem().string() : spec.name;

  std::istringstream in(io::read_file(spec.vocab_source));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tok.vocab_.push_back(line);
  }
  while (!tok.vocab_.empty() && tok.vocab_.back().empty()) tok.vocab_.pop_back();
  if (tok.vocab_.empty()) {
    throw ConfigError("tokenizer vocabulary is empty: " + spec.vocab_source.string());
  }
  for (std::size_t i = 0; i < tok.vocab_.size(); ++i) {
    if (tok.vocab_[i].empty()) {
      throw ConfigError("tokenizer vocabulary has a blank entry at line " +
                        std::to_string(i + 1) + ": " + spec.vocab_source.string());
    }
    if (!tok.index_.emplace(tok.vocab_[i], static_cast<TokenId>(i)).second) {
      throw ConfigError("duplicate vocabulary entry '" + tok.vocab_[i] + "' in " +
                        spec.vocab_source.string());
    }
  }
  const auto unk = tok.index_.find("[UNK]");
  if (unk == tok.index_.end()) {
    throw ConfigError("tokenizer vocabulary lacks [UNK]: " + spec.vocab_source.string());
  }
  tok.unk_id_ = unk->second;
  return tok;
}

std::vector<TokenId> WordpieceTokenizer::tokenize_word(const std::u32string& word) const {
  if (word.size() > kMaxWordChars) return {unk_id_};

  std::vector<TokenId> pieces;
  std::size_t start = 0;
  while (start < word.size()) {
    std::size_t end = word.size();
    TokenId match = 0;
    bool found = false;
    while (start < end) {
      std::string candidate = start > 0 ? "##" : "";
      candidate += to_utf8(word.substr(start, end - start));
      if (auto it = index_.find(candidate); it != index_.end()) {
        match = it->second;
        found = true;
        break;
      }
      --end;
    }
    if (!found) return {unk_id_};  // no cover: the whole word is unknown
    pieces.push_back(match);
    start = end;
  }
  return pieces;
}

std::vector<TokenId> WordpieceTokenizer::tokenize(std::string_view text) const {
  std::vector<TokenId> out;
  for (const auto& word : pretokenize(text)) {
    const auto pieces = tokenize_word(word);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

std::vector<std::string> WordpieceTokenizer::tokenize_to_strings(std::string_view text) const {
  std::vector<std::string> out;
  for (TokenId id : tokenize(text)) out.push_back(vocab_[id]);
  return out;
}

}  // namespace ivq::lexical
