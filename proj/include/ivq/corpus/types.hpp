#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace ivq::corpus {

enum class Role { Interviewer, Interviewee };
enum class Source { AI, Human };

const char* to_string(Role r);
const char* to_string(Source s);
Role role_from_string(const std::string& s);
Source source_from_string(const std::string& s);

struct Turn {
  Role role;
  std::string text;   // non-empty after trimming
  std::size_t index;  // ordinal within the transcript
};

struct Transcript {
  std::string id;        // unique within a corpus
  Source source;
  std::string language;  // BCP-47-style tag, e.g. "en"
  std::vector<Turn> turns;
  std::size_t char_count = 0;  // Unicode scalar values across turn texts

  bool has_role(Role r) const;
  /// Concatenation of this role's turn texts, in order, joined by a space.
  std::string role_text(Role r) const;
  /// All turn texts in order, joined by a space.
  std::string full_text() const;
};

struct Sentence {
  std::string transcript_id;
  Role role;
  std::size_t seq;  // dense from 0 within (transcript, role)
  std::string text;
};

struct CorpusFilter {
  std::size_t min_chars = 3000;    // retain only char_count > min_chars
  std::string language = "*";      // "*" matches any tag
  std::set<Role> required_roles = {Role::Interviewer, Role::Interviewee};
};

/// Validates record-level invariants; returns an empty string if `t` is
/// well-formed, otherwise a diagnostic message.
std::string validate(const Transcript& t);

/// Recomputes char_count from the turn texts (Unicode scalar values).
std::size_t count_chars(const Transcript& t);

}  // namespace ivq::corpus
