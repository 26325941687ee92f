#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ivq/corpus/types.hpp"

namespace ivq::corpus {

enum class Format { CanonicalJsonLines, MediaSum };

Format format_from_string(const std::string& s);
const char* to_string(Format f);

struct IngestIssue {
  std::size_t line = 0;     // 1-based line (JSONL) or record index (arrays)
  std::string record_id;    // empty when the record has no usable id
  std::string message;
};

/// Per-file outcome of an ingest pass. Malformed or invalid records are
/// collected as errors; suspicious-but-recoverable conditions as warnings.
struct IngestReport {
  std::string path;
  std::size_t records_seen = 0;
  std::size_t accepted = 0;
  std::vector<IngestIssue> errors;
  std::vector<IngestIssue> warnings;
};

struct ParseResult {
  std::vector<Transcript> transcripts;
  IngestReport report;
};

/// Speaker-tag classification for MediaSum-style imports. A speaker is a
/// host if its tag matches `host_tags` exactly or contains one of
/// `host_patterns` (case-insensitive).
struct RoleMap {
  std::vector<std::string> host_tags;
  std::vector<std::string> host_patterns;

  bool is_host(const std::string& speaker) const;
  static RoleMap load(const std::filesystem::path& path);
};

/// Parses the canonical one-object-per-line format
///   {"id", "source", "language", "turns": [{"role", "text"}]}
/// Bad lines become report errors; parsing continues.
ParseResult parse_canonical(const std::filesystem::path& path);

/// Imports a MediaSum-style JSON array of {id, utt[], speaker[]} records.
/// The first distinct speaker matching `role_map` becomes the Interviewer;
/// every other speaker collapses into the Interviewee. Records with no
/// mappable host are reported and skipped.
ParseResult parse_mediasum(const std::filesystem::path& path,
                           const RoleMap& role_map, Source source,
                           const std::string& language = "en");

ParseResult parse_transcripts(const std::filesystem::path& path, Format format,
                              const RoleMap& role_map = {},
                              Source mediasum_source = Source::Human);

/// Canonical serialization; inverse of parse_canonical for valid transcripts.
std::string to_canonical_jsonl(const std::vector<Transcript>& transcripts);

/// Appends an error per duplicated transcript id.
void check_unique_ids(const std::vector<Transcript>& transcripts,
                      IngestReport& report);

}  // namespace ivq::corpus
