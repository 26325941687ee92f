#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivq/corpus/ingest.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/lexical/entropy.hpp"
#include "ivq/semantic/embedding.hpp"

namespace ivq::cli {

struct InputSpec {
  std::string path;
  corpus::Format format = corpus::Format::CanonicalJsonLines;
  /// Required for mediasum (records carry no source); for canonical inputs an
  /// optional cross-check against each record's own source field.
  std::optional<corpus::Source> source;
  std::string rolemap;   // path, mediasum only
  std::string language = "en";  // mediasum only; canonical records carry it
};

struct RunConfig {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output_dir = "out";

  std::vector<InputSpec> inputs;
  corpus::CorpusFilter filter;
  std::string delimiters = ".!?";          // sentence delimiters (UTF-8)
  std::string vocab_path;                  // tokenizer vocabulary file
  std::string tokenizer_name = "wordpiece-cased";
  lexical::LMinMode lmin_mode = lexical::LMinMode::PerScope;

  std::vector<semantic::EmbeddingProviderSpec> providers;
  std::string cache_dir;  // defaults to <output_dir>/cache

  std::size_t bootstrap_replicates = 10000;
  double psm_bandwidth = 0.1;
  double psm_caliper_multiplier = 0.2;
  bool psm_transformed_ols = false;
  std::size_t histogram_bins = 30;
};

/// Parses the JSON config file. Unknown keys are rejected so typos cannot
/// silently fall back to defaults.
RunConfig load_config(const std::string& path);

RunConfig config_from_json(const nlohmann::ordered_json& j);

/// Fully materialized configuration (defaults filled in), as written beside
/// every run's outputs.
nlohmann::ordered_json resolved_json(const RunConfig& cfg);

/// Restricts providers to the named models (comma-separated list); throws
/// ConfigError when a name matches nothing.
void select_providers(RunConfig& cfg, const std::string& model_list);

}  // namespace ivq::cli
