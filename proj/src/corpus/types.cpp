#include "ivq/corpus/types.hpp"

#include "ivq/error.hpp"
#include "ivq/unicode.hpp"

namespace ivq::corpus {

const char* to_string(Role r) {
  return r == Role::Interviewer ? "Interviewer" : "Interviewee";
}

const char* to_string(Source s) { return s == Source::AI ? "AI" : "Human"; }

Role role_from_string(const std::string& s) {
  if (s == "Interviewer") return Role::Interviewer;
  if (s == "Interviewee") return Role::Interviewee;
  throw Error("unknown role: '" + s + "'");
}

Source source_from_string(const std::string& s) {
  if (s == "AI") return Source::AI;
  if (s == "Human") return Source::Human;
  throw Error("unknown source: '" + s + "'");
}

bool Transcript::has_role(Role r) const {
  for (const auto& t : turns) {
    if (t.role == r) return true;
  }
  return false;
}

std::string Transcript::role_text(Role r) const {
  std::string out;
  for (const auto& t : turns) {
    if (t.role != r) continue;
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

std::string Transcript::full_text() const {
  std::string out;
  for (const auto& t : turns) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

std::size_t count_chars(const Transcript& t) {
  std::size_t n = 0;
  for (const auto& turn : t.turns) n += unicode::length(turn.text);
  return n;
}

std::string validate(const Transcript& t) {
  if (t.id.empty()) return "missing id";
  if (t.turns.empty()) return "no turns";
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (unicode::trim(t.turns[i].text).empty()) {
      return "turn " + std::to_string(i) + " has empty text";
    }
    if (t.turns[i].index != i) {
      return "turn indices not strictly increasing from 0";
    }
  }
  if (!t.has_role(Role::Interviewer)) return "missing role: Interviewer";
  if (!t.has_role(Role::Interviewee)) return "missing role: Interviewee";
  if (t.char_count != count_chars(t)) return "char_count mismatch";
  return {};
}

}  // namespace ivq::corpus
