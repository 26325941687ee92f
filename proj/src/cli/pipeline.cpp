#include "ivq/cli/pipeline.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ivq/corpus/ingest.hpp"
#include "ivq/error.hpp"
#include "ivq/text_io.hpp"
#include "ivq/unicode.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

corpus::SegmentationOptions segmentation_options(const RunConfig& cfg) {
  corpus::SegmentationOptions opts;
  opts.delimiters.clear();
  for (char32_t c : unicode::decode(cfg.delimiters)) opts.delimiters += c;
  if (opts.delimiters.empty()) {
    throw ConfigError("segmentation.delimiters must not be empty");
  }
  return opts;
}

std::string corpus_path(const RunConfig& cfg, corpus::Source source) {
  return cfg.output_dir + (source == corpus::Source::AI ? "/corpus_ai.jsonl"
                                                        : "/corpus_human.jsonl");
}

std::string metrics_path(const RunConfig& cfg) {
  return cfg.output_dir + "/metrics.json";
}

std::vector<corpus::Transcript> load_ingested_corpus(const RunConfig& cfg) {
  std::vector<corpus::Transcript> corpus;
  for (const auto source : {corpus::Source::AI, corpus::Source::Human}) {
    const std::string path = corpus_path(cfg, source);
    if (!std::filesystem::exists(path)) {
      throw DataError("missing canonical corpus " + path +
                      "; run `ivq ingest` first");
    }
    auto result = corpus::parse_canonical(path);
    if (!result.report.errors.empty()) {
      const auto& e = result.report.errors.front();
      throw DataError("canonical corpus " + path + " line " +
                      std::to_string(e.line) + ": " + e.message);
    }
    for (auto& t : result.transcripts) {
      if (t.source != source) {
        throw DataError("canonical corpus " + path + ": transcript '" + t.id +
                        "' has source " + corpus::to_string(t.source));
      }
      corpus.push_back(std::move(t));
    }
  }
  if (corpus.empty()) {
    throw DataError("ingested corpus is empty; run `ivq ingest` first");
  }
  return corpus;
}

lexical::WordpieceTokenizer load_tokenizer(const RunConfig& cfg) {
  if (cfg.vocab_path.empty()) {
    throw ConfigError("tokenizer.vocab is required for this command");
  }
  lexical::TokenizerSpec spec;
  spec.vocab_source = cfg.vocab_path;
  spec.name = cfg.tokenizer_name;
  return lexical::WordpieceTokenizer::load(spec);
}

MetricsData load_metrics(const RunConfig& cfg) {
  const std::string path = metrics_path(cfg);
  if (!std::filesystem::exists(path)) {
    throw DataError("missing metrics file " + path + "; run `ivq metrics` first");
  }
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw DataError("metrics file " + path + " is not valid JSON: " + e.what());
  }

  MetricsData data;
  try {
    for (std::size_t s = 0; s < 3; ++s) {
      const char* key = lexical::to_string(static_cast<lexical::Scope>(s));
      if (j.at("l_min").contains(key) && !j.at("l_min").at(key).is_null()) {
        data.l_min[s] = j.at("l_min").at(key).get<std::size_t>();
      }
    }
    data.lmin_mode = j.value("lmin_mode", std::string("per_scope"));
    data.skip_semantic = j.value("skip_semantic", false);
    for (const auto& m : j.value("models", json::array())) {
      data.models.push_back(m.get<std::string>());
    }
    for (const auto& row : j.at("transcripts")) {
      MetricsRow r;
      r.id = row.at("id").get<std::string>();
      r.source = corpus::source_from_string(row.at("source").get<std::string>());
      for (std::size_t s = 0; s < 3; ++s) {
        const char* key = lexical::to_string(static_cast<lexical::Scope>(s));
        if (row.contains("entropy") && row.at("entropy").contains(key)) {
          r.entropy[s] = row.at("entropy").at(key).at("bits").get<double>();
        }
        if (row.contains("tokens_per_sentence") &&
            row.at("tokens_per_sentence").contains(key)) {
          r.tps_mean[s] =
              row.at("tokens_per_sentence").at(key).at("mean").get<double>();
        }
      }
      if (row.contains("similarity")) {
        for (const auto& [model, sim] : row.at("similarity").items()) {
          semantic::TranscriptSimilarity ts;
          ts.transcript_id = r.id;
          ts.model = model;
          ts.n_interviewer = sim.at("n_interviewer").get<std::size_t>();
          ts.n_interviewee = sim.at("n_interviewee").get<std::size_t>();
          if (sim.contains("interviewer_internal")) {
            ts.interviewer_internal =
                sim.at("interviewer_internal").get<double>();
          }
          if (sim.contains("interviewee_internal")) {
            ts.interviewee_internal =
                sim.at("interviewee_internal").get<double>();
          }
          if (sim.contains("cross")) ts.cross = sim.at("cross").get<double>();
          r.similarity.emplace(model, std::move(ts));
        }
      }
      data.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw DataError("metrics file " + path + " has unexpected shape: " +
                    e.what());
  }
  return data;
}

void write_resolved_config(const RunConfig& cfg) {
  io::write_file(cfg.output_dir + "/resolved_config.json",
                 resolved_json(cfg).dump(2) + "\n");
}

std::uint64_t metric_seed(std::uint64_t base, const std::string& metric) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : metric) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ base;
}

}  // namespace ivq::cli
