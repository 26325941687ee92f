#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "ivq/cli/commands.hpp"
#include "ivq/cli/pipeline.hpp"
#include "ivq/error.hpp"
#include "ivq/lexical/entropy.hpp"
#include "ivq/lexical/length_stats.hpp"
#include "ivq/semantic/similarity.hpp"
#include "ivq/text_io.hpp"
#include "ivq/version.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

json stats_to_json(const stats::SummaryStats& s) {
  json j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  if (s.sd) j["sd"] = *s.sd;
  j["min"] = s.min;
  j["max"] = s.max;
  j["median"] = s.median;
  return j;
}

}  // namespace

int cmd_metrics(const RunConfig& cfg, bool skip_semantic) {
  write_resolved_config(cfg);
  const auto corpus = load_ingested_corpus(cfg);
  const auto tokenizer = load_tokenizer(cfg);
  const auto seg = segmentation_options(cfg);

  const auto entropy =
      lexical::entropy_report(corpus, tokenizer, cfg.lmin_mode, cfg.threads);
  const auto lengths =
      lexical::sentence_length_stats(corpus, tokenizer, seg, cfg.threads);

  semantic::SimilarityReport similarity;
  if (!skip_semantic) {
    if (cfg.providers.empty()) {
      throw ConfigError("no embedding providers configured; rerun with "
                        "--skip-semantic or add embedding.providers");
    }
    similarity = semantic::similarity_report(corpus, cfg.providers,
                                             cfg.cache_dir, seg, cfg.threads);
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kVersion;
  j["seed"] = cfg.seed;
  j["lmin_mode"] =
      cfg.lmin_mode == lexical::LMinMode::PerScope ? "per_scope" : "global";
  json lmin;
  for (std::size_t s = 0; s < 3; ++s) {
    const char* key = lexical::to_string(static_cast<lexical::Scope>(s));
    if (entropy.l_min[s]) {
      lmin[key] = *entropy.l_min[s];
    } else {
      lmin[key] = nullptr;
    }
  }
  j["l_min"] = std::move(lmin);
  j["skip_semantic"] = skip_semantic;
  json models = json::array();
  if (!skip_semantic) {
    for (const auto& p : cfg.providers) models.push_back(p.model_name);
    models.push_back(semantic::kCrossModel);
  }
  j["models"] = std::move(models);

  // Similarity rows regrouped by transcript for the per-transcript records.
  std::map<std::string, std::vector<const semantic::TranscriptSimilarity*>>
      sim_by_id;
  for (const auto& row : similarity.rows) {
    sim_by_id[row.transcript_id].push_back(&row);
  }

  json transcripts = json::array();
  io::CsvWriter csv;
  std::vector<std::string> header = {"id", "source",
                                     "entropy_overall", "entropy_interviewer",
                                     "entropy_interviewee",
                                     "tps_overall_mean", "tps_interviewer_mean",
                                     "tps_interviewee_mean"};
  for (const auto& m : j["models"]) {
    const std::string name = m.get<std::string>();
    header.push_back("sim_" + name + "_interviewer_internal");
    header.push_back("sim_" + name + "_interviewee_internal");
    header.push_back("sim_" + name + "_cross");
  }
  csv.row(header);

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& t = corpus[i];
    json row;
    row["id"] = t.id;
    row["source"] = corpus::to_string(t.source);

    json ent;
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& scope = entropy.entries[i].by_scope[s];
      if (!scope) continue;
      const char* key = lexical::to_string(static_cast<lexical::Scope>(s));
      ent[key] = {{"bits", scope->entropy_bits},
                  {"pre_truncation_length", scope->pre_truncation_length},
                  {"truncated_length", scope->truncated_length}};
    }
    row["entropy"] = std::move(ent);

    json tps;
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& scope = lengths.entries[i].by_scope[s];
      if (!scope.stats) continue;
      const char* key = lexical::to_string(static_cast<lexical::Scope>(s));
      tps[key] = stats_to_json(*scope.stats);
    }
    row["tokens_per_sentence"] = std::move(tps);

    std::vector<std::string> cells = {t.id, corpus::to_string(t.source)};
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& scope = entropy.entries[i].by_scope[s];
      cells.push_back(scope ? io::format_double(scope->entropy_bits) : "");
    }
    // CSV column order is overall, interviewer, interviewee; entropy scopes
    // already use that order.
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& scope = lengths.entries[i].by_scope[s];
      cells.push_back(scope.stats ? io::format_double(scope.stats->mean) : "");
    }

    if (!skip_semantic) {
      json sim;
      for (const auto* srow : sim_by_id[t.id]) {
        json js;
        js["n_interviewer"] = srow->n_interviewer;
        js["n_interviewee"] = srow->n_interviewee;
        if (srow->interviewer_internal) {
          js["interviewer_internal"] = *srow->interviewer_internal;
        }
        if (srow->interviewee_internal) {
          js["interviewee_internal"] = *srow->interviewee_internal;
        }
        if (srow->cross) js["cross"] = *srow->cross;
        sim[srow->model] = std::move(js);
        const auto fmt = [](const std::optional<double>& v) {
          return v ? io::format_double(*v) : std::string();
        };
        cells.push_back(fmt(srow->interviewer_internal));
        cells.push_back(fmt(srow->interviewee_internal));
        cells.push_back(fmt(srow->cross));
      }
      row["similarity"] = std::move(sim);
    }
    csv.row(cells);
    transcripts.push_back(std::move(row));
  }
  j["transcripts"] = std::move(transcripts);

  json warnings = json::array();
  for (const auto& w : entropy.warnings) {
    warnings.push_back({{"transcript_id", w.transcript_id},
                        {"scope", lexical::to_string(w.scope)},
                        {"message", w.message}});
  }
  j["warnings"] = std::move(warnings);

  io::write_file(metrics_path(cfg), j.dump(2) + "\n");
  io::write_file(cfg.output_dir + "/metrics.csv", csv.str());
  std::printf("metrics: %zu transcripts, %zu warnings%s\n", corpus.size(),
              entropy.warnings.size(),
              skip_semantic ? " (semantic skipped)" : "");
  return 0;
}

}  // namespace ivq::cli
