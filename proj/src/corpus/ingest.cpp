#include "ivq/corpus/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ivq/error.hpp"
#include "ivq/text_io.hpp"
#include "ivq/unicode.hpp"

namespace ivq::corpus {

using json = nlohmann::ordered_json;

Format format_from_string(const std::string& s) {
  if (s == "canonical") return Format::CanonicalJsonLines;
  if (s == "mediasum") return Format::MediaSum;
  throw ConfigError("unknown corpus format: '" + s + "'");
}

const char* to_string(Format f) {
  return f == Format::CanonicalJsonLines ? "canonical" : "mediasum";
}

namespace {

std::string lower_ascii(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

Transcript transcript_from_json(const json& rec) {
  Transcript t;
  t.id = rec.at("id").get<std::string>();
  t.source = source_from_string(rec.at("source").get<std::string>());
  t.language = rec.value("language", std::string("en"));
  std::size_t index = 0;
  for (const auto& jt : rec.at("turns")) {
    Turn turn;
    turn.role = role_from_string(jt.at("role").get<std::string>());
    turn.text = jt.at("text").get<std::string>();
    turn.index = index++;
    t.turns.push_back(std::move(turn));
  }
  t.char_count = count_chars(t);
  return t;
}

void accept_or_report(Transcript&& t, std::size_t line, ParseResult& out) {
  if (const std::string problem = validate(t); !problem.empty()) {
    out.report.errors.push_back({line, t.id, problem});
    return;
  }
  out.transcripts.push_back(std::move(t));
  ++out.report.accepted;
}

}  // namespace

bool RoleMap::is_host(const std::string& speaker) const {
  for (const auto& tag : host_tags) {
    if (speaker == tag) return true;
  }
  const std::string lowered = lower_ascii(speaker);
  for (const auto& pattern : host_patterns) {
    if (!pattern.empty() &&
        lowered.find(lower_ascii(pattern)) != std::string::npos) {
      return true;
    }
  }
  return false;
}

RoleMap RoleMap::load(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("bad role map " + path.string() + ": " + e.what());
  }
  RoleMap map;
  for (const auto& t : j.value("host_tags", json::array())) {
    map.host_tags.push_back(t.get<std::string>());
  }
  for (const auto& p : j.value("host_patterns", json::array())) {
    map.host_patterns.push_back(p.get<std::string>());
  }
  if (map.host_tags.empty() && map.host_patterns.empty()) {
    throw ConfigError("role map " + path.string() +
                      " defines no host_tags or host_patterns");
  }
  return map;
}

ParseResult parse_canonical(const std::filesystem::path& path) {
  ParseResult out;
  out.report.path = path.string();
  std::istringstream in(io::read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (unicode::trim(line).empty()) continue;
    ++out.report.records_seen;
    json rec;
    try {
      rec = json::parse(line);
      accept_or_report(transcript_from_json(rec), line_no, out);
    } catch (const json::exception& e) {
      out.report.errors.push_back({line_no, {}, std::string("malformed record: ") + e.what()});
    } catch (const Error& e) {
      out.report.errors.push_back({line_no, rec.is_object() ? rec.value("id", "") : "", e.what()});
    }
  }
  return out;
}

ParseResult parse_mediasum(const std::filesystem::path& path,
                           const RoleMap& role_map, Source source,
                           const std::string& language) {
  json root;
  try {
    root = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ParseError("mediasum file is not valid JSON: " + std::string(e.what()), 1);
  }
  if (!root.is_array()) {
    throw ParseError("mediasum file must be a JSON array of records", 1);
  }

  ParseResult out;
  out.report.path = path.string();
  std::size_t index = 0;
  for (const auto& rec : root) {
    ++index;
    ++out.report.records_seen;
    std::string id = rec.is_object() ? rec.value("id", "") : "";
    try {
      const auto& utt = rec.at("utt");
      const auto& speaker = rec.at("speaker");
      if (!utt.is_array() || !speaker.is_array() || utt.size() != speaker.size()) {
        out.report.errors.push_back({index, id, "utt/speaker arrays missing or mismatched"});
        continue;
      }
      // First distinct speaker matching the role map becomes the host.
      std::string host_tag;
      std::set<std::string> unmatched;
      for (const auto& sp : speaker) {
        const std::string tag = sp.get<std::string>();
        if (host_tag.empty() && role_map.is_host(tag)) host_tag = tag;
        else if (!role_map.is_host(tag)) unmatched.insert(tag);
      }
      if (host_tag.empty()) {
        std::string who;
        for (const auto& tag : unmatched) {
          if (!who.empty()) who += ", ";
          who += "'" + tag + "'";
        }
        out.report.warnings.push_back({index, id, "unmappable speakers: " + who});
        continue;
      }
      Transcript t;
      t.id = id.empty() ? "mediasum-" + std::to_string(index) : id;
      t.source = source;
      t.language = language;
      std::size_t turn_index = 0;
      for (std::size_t i = 0; i < utt.size(); ++i) {
        const std::string text = utt[i].get<std::string>();
        if (unicode::trim(text).empty()) continue;
        Turn turn;
        turn.role = (speaker[i].get<std::string>() == host_tag)
                        ? Role::Interviewer : Role::Interviewee;
        turn.text = text;
        turn.index = turn_index++;
        t.turns.push_back(std::move(turn));
      }
      t.char_count = count_chars(t);
      accept_or_report(std::move(t), index, out);
    } catch (const json::exception& e) {
      out.report.errors.push_back({index, id, std::string("malformed record: ") + e.what()});
    }
  }
  return out;
}

ParseResult parse_transcripts(const std::filesystem::path& path, Format format,
                              const RoleMap& role_map, Source mediasum_source) {
  if (format == Format::CanonicalJsonLines) return parse_canonical(path);
  return parse_mediasum(path, role_map, mediasum_source);
}

std::string to_canonical_jsonl(const std::vector<Transcript>& transcripts) {
  std::string out;
  for (const auto& t : transcripts) {
    json rec;
    rec["id"] = t.id;
    rec["source"] = to_string(t.source);
    rec["language"] = t.language;
    json turns = json::array();
    for (const auto& turn : t.turns) {
      turns.push_back({{"role", to_string(turn.role)}, {"text", turn.text}});
    }
    rec["turns"] = std::move(turns);
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void check_unique_ids(const std::vector<Transcript>& transcripts,
                      IngestReport& report) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    if (!seen.insert(transcripts[i].id).second) {
      report.errors.push_back({i + 1, transcripts[i].id, "duplicate transcript id"});
    }
  }
}

}  // namespace ivq::corpus
