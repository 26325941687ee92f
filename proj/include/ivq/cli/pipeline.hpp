#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ivq/cli/config.hpp"
#include "ivq/corpus/segment.hpp"
#include "ivq/corpus/types.hpp"
#include "ivq/lexical/tokenizer.hpp"
#include "ivq/semantic/similarity.hpp"

namespace ivq::cli {

corpus::SegmentationOptions segmentation_options(const RunConfig& cfg);

std::string corpus_path(const RunConfig& cfg, corpus::Source source);
std::string metrics_path(const RunConfig& cfg);

/// Canonical AI + Human transcripts as written by `ivq ingest`; throws
/// DataError naming the missing stage otherwise.
std::vector<corpus::Transcript> load_ingested_corpus(const RunConfig& cfg);

lexical::WordpieceTokenizer load_tokenizer(const RunConfig& cfg);

/// Per-transcript values parsed back from the metrics file.
struct MetricsRow {
  std::string id;
  corpus::Source source = corpus::Source::Human;
  std::array<std::optional<double>, 3> entropy;    // by lexical::Scope index
  std::array<std::optional<double>, 3> tps_mean;   // tokens/sentence mean
  /// Aggregates keyed by model name (includes the cross pseudo-model).
  std::map<std::string, semantic::TranscriptSimilarity> similarity;
};

struct MetricsData {
  std::array<std::optional<std::size_t>, 3> l_min;
  std::string lmin_mode;
  std::vector<std::string> models;  // provider order, then "cross"
  bool skip_semantic = false;
  std::vector<MetricsRow> rows;  // corpus order
};

MetricsData load_metrics(const RunConfig& cfg);

void write_resolved_config(const RunConfig& cfg);

/// Stable per-metric stream seed: FNV-1a of the metric name folded into the
/// run seed, so row sets can change without shifting other rows' draws.
std::uint64_t metric_seed(std::uint64_t base, const std::string& metric);

}  // namespace ivq::cli
