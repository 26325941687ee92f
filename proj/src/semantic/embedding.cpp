#include "ivq/semantic/embedding.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ivq/error.hpp"
#include "ivq/text_io.hpp"

namespace ivq::semantic {
namespace {

using json = nlohmann::ordered_json;

std::string list_keys(const std::vector<EmbeddingKey>& keys, std::size_t cap = 10) {
  std::string out;
  for (std::size_t i = 0; i < keys.size() && i < cap; ++i) {
    if (i) out += ", ";
    out += to_string(keys[i]);
  }
  if (keys.size() > cap) {
    out += ", ... (" + std::to_string(keys.size()) + " total)";
  }
  return out;
}

void validate_vector(const EmbeddingKey& key, const std::vector<float>& v,
                     std::size_t dimension) {
  if (v.size() != dimension) {
    throw ProviderError("embedding for " + to_string(key) + " has dimension " +
                        std::to_string(v.size()) + ", expected " +
                        std::to_string(dimension));
  }
  double norm_sq = 0.0;
  for (float x : v) {
    if (!std::isfinite(x)) {
      throw ProviderError("embedding for " + to_string(key) +
                          " contains a non-finite component");
    }
    norm_sq += static_cast<double>(x) * static_cast<double>(x);
  }
  if (norm_sq <= 0.0) {
    throw ProviderError("embedding for " + to_string(key) + " has zero norm");
  }
}

std::vector<std::vector<float>> fetch_batch(httplib::Client& client,
                                            const EmbeddingProviderSpec& provider,
                                            const std::vector<std::string>& texts) {
  json body;
  body["model"] = provider.model_name;
  body["texts"] = texts;
  const std::string payload = body.dump();

  std::string last_error;
  for (unsigned attempt = 0; attempt < std::max(1u, provider.max_retries); ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
    }
    auto res = client.Post("/embed", payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::exception& e) {
      throw ProviderError(std::string("embedding service returned invalid JSON: ") +
                          e.what());
    }
    if (!reply.contains("vectors") || !reply["vectors"].is_array()) {
      throw ProviderError("embedding service reply lacks a \"vectors\" array");
    }
    std::vector<std::vector<float>> out;
    out.reserve(reply["vectors"].size());
    try {
      for (const auto& vec : reply["vectors"]) {
        std::vector<float> v;
        v.reserve(vec.size());
        for (const auto& x : vec) v.push_back(x.get<float>());
        out.push_back(std::move(v));
      }
    } catch (const json::exception& e) {
      throw ProviderError(
          std::string("embedding service returned a malformed vector: ") +
          e.what());
    }
    if (out.size() != texts.size()) {
      throw ProviderError("embedding service returned " +
                          std::to_string(out.size()) + " vectors for " +
                          std::to_string(texts.size()) + " texts");
    }
    return out;
  }
  throw ProviderError("embedding request to " + provider.endpoint +
                      " failed after " + std::to_string(provider.max_retries) +
                      " attempts: " + last_error);
}

}  // namespace

std::string to_string(const EmbeddingKey& k) {
  return k.transcript_id + "/" + corpus::to_string(k.role) + "/" +
         std::to_string(k.seq);
}

EmbeddingCache read_cache(const std::string& path) {
  const std::string raw = io::read_file(path);
  const std::size_t header_end = raw.find('\n');
  if (header_end == std::string::npos) {
    throw DataError("embedding cache " + path + ": missing header line");
  }
  const std::size_t index_end = raw.find('\n', header_end + 1);
  if (index_end == std::string::npos) {
    throw DataError("embedding cache " + path + ": missing index line");
  }

  EmbeddingCache cache;
  std::vector<EmbeddingKey> keys;
  std::size_t count = 0;
  try {
    const json header = json::parse(raw.substr(0, header_end));
    cache.model_name = header.at("model_name").get<std::string>();
    cache.dimension = header.at("dimension").get<std::size_t>();
    count = header.at("count").get<std::size_t>();

    const json index =
        json::parse(raw.substr(header_end + 1, index_end - header_end - 1));
    for (const auto& entry : index) {
      EmbeddingKey key;
      key.transcript_id = entry.at(0).get<std::string>();
      key.role = corpus::role_from_string(entry.at(1).get<std::string>());
      key.seq = entry.at(2).get<std::size_t>();
      keys.push_back(std::move(key));
    }
  } catch (const json::exception& e) {
    throw DataError("embedding cache " + path + ": malformed metadata: " +
                    e.what());
  }
  if (cache.dimension == 0) {
    throw DataError("embedding cache " + path + ": dimension must be positive");
  }
  if (keys.size() != count) {
    throw DataError("embedding cache " + path + ": index lists " +
                    std::to_string(keys.size()) + " keys but header declares " +
                    std::to_string(count));
  }

  const std::size_t blob_offset = index_end + 1;
  const std::size_t record_bytes = cache.dimension * 4;
  if (raw.size() - blob_offset != count * record_bytes) {
    throw DataError("embedding cache " + path + ": expected " +
                    std::to_string(count * record_bytes) +
                    " payload bytes, found " +
                    std::to_string(raw.size() - blob_offset));
  }
  const auto* bytes =
      reinterpret_cast<const unsigned char*>(raw.data()) + blob_offset;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<float> v(cache.dimension);
    for (std::size_t d = 0; d < cache.dimension; ++d) {
      const unsigned char* p = bytes + i * record_bytes + d * 4;
      const std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                              (static_cast<std::uint32_t>(p[1]) << 8) |
                              (static_cast<std::uint32_t>(p[2]) << 16) |
                              (static_cast<std::uint32_t>(p[3]) << 24);
      v[d] = std::bit_cast<float>(u);
    }
    cache.vectors.emplace(keys[i], std::move(v));
  }
  return cache;
}

void write_cache(const std::string& path, const EmbeddingCache& cache) {
  json header;
  header["model_name"] = cache.model_name;
  header["dimension"] = cache.dimension;
  header["count"] = cache.vectors.size();

  json index = json::array();
  for (const auto& [key, v] : cache.vectors) {
    index.push_back(json::array(
        {key.transcript_id, corpus::to_string(key.role), key.seq}));
  }

  std::string out = header.dump();
  out += '\n';
  out += index.dump();
  out += '\n';
  for (const auto& [key, v] : cache.vectors) {
    for (float x : v) {
      const auto u = std::bit_cast<std::uint32_t>(x);
      out.push_back(static_cast<char>(u & 0xff));
      out.push_back(static_cast<char>((u >> 8) & 0xff));
      out.push_back(static_cast<char>((u >> 16) & 0xff));
      out.push_back(static_cast<char>((u >> 24) & 0xff));
    }
  }
  io::write_file(path, out);
}

std::vector<SentenceEmbedding> embed_sentences(
    const std::vector<corpus::Sentence>& sentences,
    const EmbeddingProviderSpec& provider, const std::string& cache_path) {
  if (provider.dimension == 0) {
    throw ConfigError("embedding provider dimension must be positive");
  }

  std::map<EmbeddingKey, std::vector<float>> have;
  if (std::filesystem::exists(cache_path)) {
    EmbeddingCache cache = read_cache(cache_path);
    if (cache.model_name != provider.model_name) {
      throw ConfigError("embedding cache " + cache_path + " holds model '" +
                        cache.model_name + "' but provider declares '" +
                        provider.model_name + "'; use a separate cache path");
    }
    if (cache.dimension != provider.dimension) {
      throw ConfigError("embedding cache " + cache_path + " has dimension " +
                        std::to_string(cache.dimension) +
                        " but provider declares " +
                        std::to_string(provider.dimension));
    }
    have = std::move(cache.vectors);
  }

  std::vector<EmbeddingKey> missing;
  std::vector<std::size_t> missing_idx;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& s = sentences[i];
    EmbeddingKey key{s.transcript_id, s.role, s.seq};
    if (!have.count(key)) {
      missing.push_back(std::move(key));
      missing_idx.push_back(i);
    }
  }

  if (!missing.empty()) {
    if (provider.kind == ProviderKind::PrecomputedFile) {
      EmbeddingCache source = read_cache(provider.path);
      if (source.dimension != provider.dimension) {
        throw ConfigError("precomputed file " + provider.path +
                          " has dimension " + std::to_string(source.dimension) +
                          " but provider declares " +
                          std::to_string(provider.dimension));
      }
      std::vector<EmbeddingKey> still_missing;
      for (const auto& key : missing) {
        auto it = source.vectors.find(key);
        if (it == source.vectors.end()) {
          still_missing.push_back(key);
        } else {
          have.emplace(key, it->second);
        }
      }
      if (!still_missing.empty()) {
        throw DataError("precomputed file " + provider.path +
                        " is missing embeddings for: " +
                        list_keys(still_missing));
      }
    } else {
      httplib::Client client(provider.endpoint);
      client.set_connection_timeout(std::chrono::seconds(10));
      client.set_read_timeout(std::chrono::seconds(120));
      const std::size_t batch = std::max<std::size_t>(1, provider.batch_size);
      for (std::size_t start = 0; start < missing.size(); start += batch) {
        const std::size_t end = std::min(missing.size(), start + batch);
        std::vector<std::string> texts;
        texts.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) {
          texts.push_back(sentences[missing_idx[i]].text);
        }
        auto vectors = fetch_batch(client, provider, texts);
        for (std::size_t i = start; i < end; ++i) {
          have.emplace(missing[i], std::move(vectors[i - start]));
        }
      }
    }
  }

  std::vector<SentenceEmbedding> out;
  out.reserve(sentences.size());
  EmbeddingCache to_store;
  to_store.model_name = provider.model_name;
  to_store.dimension = provider.dimension;
  for (const auto& s : sentences) {
    EmbeddingKey key{s.transcript_id, s.role, s.seq};
    const auto& v = have.at(key);
    validate_vector(key, v, provider.dimension);
    to_store.vectors.emplace(key, v);
    out.push_back({std::move(key), v});
  }
  if (!cache_path.empty()) write_cache(cache_path, to_store);
  return out;
}

}  // namespace ivq::semantic
