#include <cstdio>

#include <nlohmann/json.hpp>

#include "ivq/cli/commands.hpp"
#include "ivq/cli/pipeline.hpp"
#include "ivq/corpus/filter.hpp"
#include "ivq/corpus/ingest.hpp"
#include "ivq/error.hpp"
#include "ivq/text_io.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

json issues_to_json(const std::vector<corpus::IngestIssue>& issues) {
  json out = json::array();
  for (const auto& issue : issues) {
    out.push_back({{"line", issue.line},
                   {"record_id", issue.record_id},
                   {"message", issue.message}});
  }
  return out;
}

}  // namespace

int cmd_ingest(const RunConfig& cfg) {
  if (cfg.inputs.empty()) {
    throw ConfigError("no inputs configured; nothing to ingest");
  }
  write_resolved_config(cfg);

  std::vector<corpus::Transcript> all;
  json input_reports = json::array();
  std::size_t error_count = 0;

  for (const auto& in : cfg.inputs) {
    corpus::ParseResult result;
    if (in.format == corpus::Format::CanonicalJsonLines) {
      result = corpus::parse_canonical(in.path);
      if (in.source) {
        // The declared source acts as a cross-check on record contents.
        std::vector<corpus::Transcript> kept;
        for (auto& t : result.transcripts) {
          if (t.source != *in.source) {
            result.report.errors.push_back(
                {0, t.id,
                 std::string("record source ") + corpus::to_string(t.source) +
                     " contradicts the input's declared " +
                     corpus::to_string(*in.source)});
            --result.report.accepted;
            continue;
          }
          kept.push_back(std::move(t));
        }
        result.transcripts = std::move(kept);
      }
    } else {
      const corpus::RoleMap role_map = corpus::RoleMap::load(in.rolemap);
      result = corpus::parse_mediasum(in.path, role_map, *in.source,
                                      in.language);
    }

    json jr;
    jr["path"] = result.report.path;
    jr["format"] = corpus::to_string(in.format);
    jr["records_seen"] = result.report.records_seen;
    jr["accepted"] = result.report.accepted;
    jr["errors"] = issues_to_json(result.report.errors);
    jr["warnings"] = issues_to_json(result.report.warnings);
    input_reports.push_back(std::move(jr));
    error_count += result.report.errors.size();

    for (auto& t : result.transcripts) all.push_back(std::move(t));
  }

  corpus::IngestReport dup_report;
  corpus::check_unique_ids(all, dup_report);
  if (!dup_report.errors.empty()) {
    error_count += dup_report.errors.size();
  }

  const std::vector<corpus::Transcript> filtered =
      corpus::filter_corpus(all, cfg.filter);
  if (filtered.empty()) {
    throw DataError("no transcripts survived ingest and filtering");
  }

  std::vector<corpus::Transcript> ai, human;
  for (const auto& t : filtered) {
    (t.source == corpus::Source::AI ? ai : human).push_back(t);
  }
  io::write_file(corpus_path(cfg, corpus::Source::AI),
                 corpus::to_canonical_jsonl(ai));
  io::write_file(corpus_path(cfg, corpus::Source::Human),
                 corpus::to_canonical_jsonl(human));

  json report;
  report["schema_version"] = 1;
  report["inputs"] = std::move(input_reports);
  report["duplicate_ids"] = issues_to_json(dup_report.errors);
  report["accepted_total"] = all.size();
  report["filtered_out"] = all.size() - filtered.size();
  report["final"] = {{"AI", ai.size()}, {"Human", human.size()}};
  report["filter"] = {{"min_chars", cfg.filter.min_chars},
                      {"language", cfg.filter.language}};
  io::write_file(cfg.output_dir + "/ingest_report.json",
                 report.dump(2) + "\n");

  std::printf("ingest: %zu AI + %zu Human transcripts (%zu filtered out, "
              "%zu record errors)\n",
              ai.size(), human.size(), all.size() - filtered.size(),
              error_count);
  return error_count == 0 ? 0 : 1;
}

}  // namespace ivq::cli
