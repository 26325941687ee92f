#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ivq/corpus/types.hpp"

namespace ivq::semantic {

enum class ProviderKind { RemoteService, PrecomputedFile };

struct EmbeddingProviderSpec {
  ProviderKind kind = ProviderKind::PrecomputedFile;
  /// RemoteService: base URL ("http://host:port") of a service accepting
  /// POST /embed with {"model": ..., "texts": [...]} and answering
  /// {"vectors": [[...], ...]}. PrecomputedFile: path to a cache-format file.
  std::string endpoint;
  std::string path;
  std::string model_name;
  std::size_t dimension = 768;
  std::size_t batch_size = 64;   // sentences per remote request
  unsigned max_retries = 3;      // attempts per request before failing
};

/// Identifies one sentence's vector: (transcript_id, role, seq).
struct EmbeddingKey {
  std::string transcript_id;
  corpus::Role role;
  std::size_t seq = 0;

  friend bool operator<(const EmbeddingKey& a, const EmbeddingKey& b) {
    return std::tie(a.transcript_id, a.role, a.seq) <
           std::tie(b.transcript_id, b.role, b.seq);
  }
  friend bool operator==(const EmbeddingKey& a, const EmbeddingKey& b) {
    return a.transcript_id == b.transcript_id && a.role == b.role &&
           a.seq == b.seq;
  }
};

std::string to_string(const EmbeddingKey& k);

struct SentenceEmbedding {
  EmbeddingKey key;
  /// Stored as float32 so cached reruns are bit-exact; aggregate math widens
  /// to double.
  std::vector<float> vector;
};

/// On-disk layout: one JSON header line {model_name, dimension, count}, one
/// JSON index line [[transcript_id, role, seq], ...], then count fixed-width
/// records of dimension little-endian float32 values, in index order.
struct EmbeddingCache {
  std::string model_name;
  std::size_t dimension = 0;
  std::map<EmbeddingKey, std::vector<float>> vectors;
};

EmbeddingCache read_cache(const std::string& path);
void write_cache(const std::string& path, const EmbeddingCache& cache);

/// Returns one embedding per sentence, in input order. Warm cache entries are
/// served without provider traffic; misses go to the provider (remote mode) or
/// raise an error listing the missing keys (precomputed mode). The cache at
/// `cache_path` is rewritten to cover every requested sentence.
std::vector<SentenceEmbedding> embed_sentences(
    const std::vector<corpus::Sentence>& sentences,
    const EmbeddingProviderSpec& provider, const std::string& cache_path);

}  // namespace ivq::semantic
