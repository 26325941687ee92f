#include "ivq/semantic/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ivq/error.hpp"
#include "ivq/parallel.hpp"

namespace ivq::semantic {
namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

template <class T>
double cosine_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw DataError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = static_cast<double>(a[i]);
    const double y = static_cast<double>(b[i]);
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na <= 0.0 || nb <= 0.0) throw DataError("cosine: zero-norm vector");
  return clamp_unit(dot / (std::sqrt(na) * std::sqrt(nb)));
}

/// Unit-normalized copy in double precision.
std::vector<double> normalized(const SentenceEmbedding& e) {
  double norm_sq = 0.0;
  for (float x : e.vector) norm_sq += static_cast<double>(x) * x;
  if (norm_sq <= 0.0) {
    throw DataError("zero-norm embedding for " + to_string(e.key));
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  std::vector<double> out(e.vector.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(e.vector[i]) * inv;
  }
  return out;
}

/// Sums of unit vectors and of their squared norms for one role of one
/// transcript; enough to evaluate Eqs. of mean pairwise cosine in O(N d).
struct RoleAccumulator {
  std::vector<double> sum;
  double sum_norm_sq = 0.0;  // == count up to rounding
  std::size_t count = 0;

  void add(const std::vector<double>& unit) {
    if (sum.empty()) sum.assign(unit.size(), 0.0);
    for (std::size_t i = 0; i < unit.size(); ++i) sum[i] += unit[i];
    double n = 0.0;
    for (double x : unit) n += x * x;
    sum_norm_sq += n;
    ++count;
  }
};

std::optional<double> internal_from(const RoleAccumulator& acc) {
  if (acc.count < 2) return std::nullopt;
  double s2 = 0.0;
  for (double x : acc.sum) s2 += x * x;
  const double n = static_cast<double>(acc.count);
  // ||sum||^2 = sum of all ordered-pair dots incl. self terms; subtract the
  // self terms and average over the N(N-1) ordered == N(N-1)/2 unordered pairs.
  return clamp_unit((s2 - acc.sum_norm_sq) / (n * (n - 1.0)));
}

std::optional<double> cross_from(const RoleAccumulator& a,
                                 const RoleAccumulator& b) {
  if (a.count == 0 || b.count == 0) return std::nullopt;
  double dot = 0.0;
  for (std::size_t i = 0; i < a.sum.size(); ++i) dot += a.sum[i] * b.sum[i];
  return clamp_unit(dot / (static_cast<double>(a.count) *
                           static_cast<double>(b.count)));
}

}  // namespace

double cosine(std::span<const float> a, std::span<const float> b) {
  return cosine_impl(a, b);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  return cosine_impl(a, b);
}

std::optional<double> internal_similarity(
    std::span<const SentenceEmbedding> embeds) {
  if (embeds.size() < 2) return std::nullopt;
  RoleAccumulator acc;
  for (const auto& e : embeds) acc.add(normalized(e));
  return internal_from(acc);
}

std::optional<double> cross_similarity(std::span<const SentenceEmbedding> a,
                                       std::span<const SentenceEmbedding> b) {
  if (a.empty() || b.empty()) return std::nullopt;
  RoleAccumulator aa, bb;
  for (const auto& e : a) aa.add(normalized(e));
  for (const auto& e : b) bb.add(normalized(e));
  return cross_from(aa, bb);
}

SimilarityReport similarity_report(
    const std::vector<corpus::Transcript>& corpus,
    const std::vector<EmbeddingProviderSpec>& providers,
    const std::string& cache_dir, const corpus::SegmentationOptions& seg,
    unsigned threads) {
  if (providers.empty()) throw ConfigError("similarity_report: no providers");

  const auto segmented = segment_corpus(corpus, seg);
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < corpus.size(); ++i) slot[corpus[i].id] = i;

  SimilarityReport report;
  std::vector<TranscriptSimilarity> cross_rows(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    cross_rows[i].transcript_id = corpus[i].id;
    cross_rows[i].model = kCrossModel;
  }

  for (const auto& provider : providers) {
    std::string cache_name = provider.model_name;
    std::replace(cache_name.begin(), cache_name.end(), '/', '_');
    const std::string cache_path =
        cache_dir.empty() ? std::string()
                          : cache_dir + "/" + cache_name + ".embcache";
    const auto embeds =
        embed_sentences(segmented.sentences, provider, cache_path);

    // Per-transcript accumulators per role, model-specific.
    std::vector<std::array<RoleAccumulator, 2>> acc(corpus.size());
    for (const auto& e : embeds) {
      const std::size_t t = slot.at(e.key.transcript_id);
      acc[t][e.key.role == corpus::Role::Interviewer ? 0 : 1].add(
          normalized(e));
    }

    std::vector<TranscriptSimilarity> rows(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
      auto& row = rows[i];
      row.transcript_id = corpus[i].id;
      row.model = provider.model_name;
      row.n_interviewer = acc[i][0].count;
      row.n_interviewee = acc[i][1].count;
      row.interviewer_internal = internal_from(acc[i][0]);
      row.interviewee_internal = internal_from(acc[i][1]);
      row.cross = cross_from(acc[i][0], acc[i][1]);
    });

    for (std::size_t i = 0; i < corpus.size(); ++i) {
      cross_rows[i].n_interviewer = rows[i].n_interviewer;
      cross_rows[i].n_interviewee = rows[i].n_interviewee;
      report.rows.push_back(rows[i]);
    }
  }

  // Cross pseudo-model: unweighted mean across providers. Presence of an
  // aggregate is segmentation-driven, hence identical across models.
  const double m = static_cast<double>(providers.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    double sums[3] = {0.0, 0.0, 0.0};
    bool present[3] = {true, true, true};
    for (std::size_t p = 0; p < providers.size(); ++p) {
      const auto& row = report.rows[p * corpus.size() + i];
      const std::optional<double>* vals[3] = {
          &row.interviewer_internal, &row.interviewee_internal, &row.cross};
      for (int k = 0; k < 3; ++k) {
        if (vals[k]->has_value()) {
          sums[k] += **vals[k];
        } else {
          present[k] = false;
        }
      }
    }
    if (present[0]) cross_rows[i].interviewer_internal = sums[0] / m;
    if (present[1]) cross_rows[i].interviewee_internal = sums[1] / m;
    if (present[2]) cross_rows[i].cross = sums[2] / m;
  }
  for (auto& row : cross_rows) report.rows.push_back(std::move(row));
  return report;
}

}  // namespace ivq::semantic
