#include <doctest.h>

#include <cmath>

#include "ivq/error.hpp"
#include "ivq/semantic/similarity.hpp"
#include "support.hpp"

using namespace ivq;
using namespace ivq::semantic;

TEST_SUITE_BEGIN("similarity");

static double cosine_oracle(const std::vector<float>& a,
                            const std::vector<float>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

static std::vector<SentenceEmbedding> random_embeddings(Rng& rng,
                                                        const char* id,
                                                        corpus::Role role,
                                                        std::size_t n,
                                                        std::size_t dim) {
  std::vector<SentenceEmbedding> out;
  for (std::size_t i = 0; i < n; ++i) {
    SentenceEmbedding e;
    e.key = {id, role, i};
    e.vector.resize(dim);
    for (auto& x : e.vector) x = static_cast<float>(rng.next_normal());
    out.push_back(std::move(e));
  }
  return out;
}

TEST_CASE("cosine matches the textbook formula and clamps") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<float> a(8), b(8);
    for (auto& x : a) x = static_cast<float>(rng.next_normal());
    for (auto& x : b) x = static_cast<float>(rng.next_normal());
    CHECK(std::abs(cosine(a, b) - cosine_oracle(a, b)) < 1e-12);
    CHECK(cosine(a, b) <= 1.0);
    CHECK(cosine(a, b) >= -1.0);
  }
  std::vector<float> u{1.0f, 2.0f, 2.0f};
  CHECK(std::abs(cosine(u, u) - 1.0) < 1e-15);  // exactly clamped
  std::vector<float> neg{-1.0f, -2.0f, -2.0f};
  CHECK(std::abs(cosine(u, neg) + 1.0) < 1e-15);

  std::vector<float> zero(3, 0.0f);
  CHECK_THROWS_AS(cosine(u, zero), DataError);
  std::vector<float> shorter{1.0f, 2.0f};
  CHECK_THROWS_AS(cosine(u, shorter), DataError);
}

TEST_CASE("internal similarity equals the brute-force pair mean") {
  Rng rng(17);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto embeds =
        random_embeddings(rng, "t", corpus::Role::Interviewer, n, 10);
    double brute = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        brute += cosine_oracle(embeds[i].vector, embeds[j].vector);
        ++pairs;
      }
    }
    brute /= static_cast<double>(pairs);
    const auto got = internal_similarity(embeds);
    REQUIRE(got.has_value());
    CHECK(std::abs(*got - brute) < 1e-12);
  }
  const auto single =
      random_embeddings(rng, "t", corpus::Role::Interviewer, 1, 10);
  CHECK_FALSE(internal_similarity(single).has_value());
  CHECK_FALSE(internal_similarity({}).has_value());
}

TEST_CASE("cross similarity equals the brute-force bipartite mean") {
  Rng rng(29);
  for (std::size_t n_a = 1; n_a <= 5; ++n_a) {
    for (std::size_t n_b = 1; n_b <= 5; ++n_b) {
      const auto a =
          random_embeddings(rng, "t", corpus::Role::Interviewer, n_a, 7);
      const auto b =
          random_embeddings(rng, "t", corpus::Role::Interviewee, n_b, 7);
      double brute = 0.0;
      for (const auto& ea : a) {
        for (const auto& eb : b) {
          brute += cosine_oracle(ea.vector, eb.vector);
        }
      }
      brute /= static_cast<double>(n_a * n_b);
      const auto got = cross_similarity(a, b);
      REQUIRE(got.has_value());
      CHECK(std::abs(*got - brute) < 1e-12);
    }
  }
  const auto a = random_embeddings(rng, "t", corpus::Role::Interviewer, 3, 7);
  CHECK_FALSE(cross_similarity(a, {}).has_value());
  CHECK_FALSE(cross_similarity({}, a).has_value());
}

TEST_CASE("aggregates are invariant under positive rescaling") {
  Rng rng(41);
  auto a = random_embeddings(rng, "t", corpus::Role::Interviewer, 5, 9);
  auto b = random_embeddings(rng, "t", corpus::Role::Interviewee, 4, 9);
  const auto internal_before = *internal_similarity(a);
  const auto cross_before = *cross_similarity(a, b);
  // Power-of-two factors keep the float components exact, so the float32
  // storage cannot mask a normalization bug.
  const float factors[] = {0.25f, 0.5f, 2.0f, 4.0f, 8.0f, 16.0f};
  for (auto* group : {&a, &b}) {
    for (auto& e : *group) {
      const float scale = factors[rng.next_below(6)];
      for (auto& x : e.vector) x *= scale;
    }
  }
  CHECK(std::abs(*internal_similarity(a) - internal_before) < 1e-12);
  CHECK(std::abs(*cross_similarity(a, b) - cross_before) < 1e-12);

  // Arbitrary positive factors, applied in double precision.
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> u(12), w(12);
    for (auto& x : u) x = rng.next_normal();
    for (auto& x : w) x = rng.next_normal();
    const double before = cosine(u, w);
    const double fu = 0.01 + 50.0 * rng.next_double();
    const double fw = 0.01 + 50.0 * rng.next_double();
    std::vector<double> su(12), sw(12);
    for (std::size_t i = 0; i < 12; ++i) {
      su[i] = u[i] * fu;
      sw[i] = w[i] * fw;
    }
    CHECK(std::abs(cosine(su, sw) - before) < 1e-12);
  }
}

TEST_CASE("similarity_report aggregates per model plus the cross mean") {
  const auto dir = test::tmp_dir("sim_report");
  const auto pool = test::vocab_words();
  Rng rng(7);
  std::vector<corpus::Transcript> corpus = {
      test::make_transcript("x", corpus::Source::AI, rng, pool),
      test::make_transcript("y", corpus::Source::Human, rng, pool),
  };

  std::vector<EmbeddingProviderSpec> providers;
  for (const char* model : {"model-a", "model-b"}) {
    test::write_embedding_file(corpus, model, 16,
                               dir / (std::string(model) + ".provider"));
    EmbeddingProviderSpec spec;
    spec.kind = ProviderKind::PrecomputedFile;
    spec.path = (dir / (std::string(model) + ".provider")).string();
    spec.model_name = model;
    spec.dimension = 16;
    providers.push_back(spec);
  }

  const auto report =
      similarity_report(corpus, providers, (dir / "cache").string());
  // Rows: 2 transcripts x (2 providers + cross), providers first.
  REQUIRE(report.rows.size() == 6);
  CHECK(report.rows[0].model == "model-a");
  CHECK(report.rows[0].transcript_id == "x");
  CHECK(report.rows[1].transcript_id == "y");
  CHECK(report.rows[2].model == "model-b");
  CHECK(report.rows[4].model == kCrossModel);

  for (const auto& row : report.rows) {
    REQUIRE(row.interviewer_internal.has_value());
    REQUIRE(row.interviewee_internal.has_value());
    REQUIRE(row.cross.has_value());
  }

  // The cross pseudo-model is the unweighted per-transcript mean.
  for (int i = 0; i < 2; ++i) {
    const auto& ma = report.rows[i];
    const auto& mb = report.rows[2 + i];
    const auto& cx = report.rows[4 + i];
    CHECK(std::abs(*cx.interviewer_internal -
                   (*ma.interviewer_internal + *mb.interviewer_internal) / 2) <
          1e-12);
    CHECK(std::abs(*cx.interviewee_internal -
                   (*ma.interviewee_internal + *mb.interviewee_internal) / 2) <
          1e-12);
    CHECK(std::abs(*cx.cross - (*ma.cross + *mb.cross) / 2) < 1e-12);
  }

  // Sentence counts are model-independent.
  CHECK(report.rows[0].n_interviewer == report.rows[2].n_interviewer);
  CHECK(report.rows[0].n_interviewee == report.rows[4].n_interviewee);
}

TEST_CASE("similarity_report leaves aggregates absent for sparse roles") {
  const auto dir = test::tmp_dir("sim_sparse");
  corpus::Transcript t;
  t.id = "sparse";
  t.source = corpus::Source::AI;
  t.language = "en";
  t.turns = {{corpus::Role::Interviewer, "Single question here.", 0},
             {corpus::Role::Interviewee, "One. Two. Three.", 1}};
  t.char_count = corpus::count_chars(t);
  std::vector<corpus::Transcript> corpus = {t};

  test::write_embedding_file(corpus, "m", 8, dir / "m.provider");
  EmbeddingProviderSpec spec;
  spec.kind = ProviderKind::PrecomputedFile;
  spec.path = (dir / "m.provider").string();
  spec.model_name = "m";
  spec.dimension = 8;

  const auto report = similarity_report(corpus, {spec}, (dir / "c").string());
  REQUIRE(report.rows.size() == 2);  // model + cross
  const auto& row = report.rows[0];
  CHECK(row.n_interviewer == 1);
  CHECK(row.n_interviewee == 3);
  CHECK_FALSE(row.interviewer_internal.has_value());  // one sentence only
  CHECK(row.interviewee_internal.has_value());
  CHECK(row.cross.has_value());
}

TEST_SUITE_END();
