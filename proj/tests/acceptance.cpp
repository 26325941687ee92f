// Release gate: every check below must print PASS before a build ships.
// Each criterion exercises one pillar of the toolkit against an independent
// oracle or a hard numeric contract, and prints a single line verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "ivq/causal/balance.hpp"
#include "ivq/causal/covariates.hpp"
#include "ivq/causal/estimate.hpp"
#include "ivq/causal/matching.hpp"
#include "ivq/causal/propensity.hpp"
#include "ivq/causal/transforms.hpp"
#include "ivq/cli/commands.hpp"
#include "ivq/corpus/ingest.hpp"
#include "ivq/lexical/entropy.hpp"
#include "ivq/rng.hpp"
#include "ivq/semantic/similarity.hpp"
#include "ivq/stats/compare.hpp"
#include "ivq/stats/descriptive.hpp"
#include "ivq/stats/effect.hpp"
#include "ivq/stats/inference.hpp"
#include "ivq/text_io.hpp"
#include "support.hpp"

using namespace ivq;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// --- 1. Entropy against a direct plug-in computation. ---------------------

Verdict entropy_oracle() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  double max_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 10 + rng.next_below(4991);     // 10..5000
    const std::size_t vocab = 2 + rng.next_below(499);     // 2..500
    std::vector<lexical::TokenId> tokens(len);
    std::map<lexical::TokenId, std::size_t> counts;
    for (auto& t : tokens) {
      t = static_cast<lexical::TokenId>(rng.next_below(vocab));
      counts[t]++;
    }
    double naive = 0.0;
    for (const auto& [tok, c] : counts) {
      const double p = static_cast<double>(c) / static_cast<double>(len);
      naive -= p * std::log2(p);
    }
    max_err = std::max(
        max_err, std::abs(lexical::shannon_entropy(tokens) - naive));
  }
  const double elapsed = seconds_since(start);
  if (max_err >= 1e-9) v.fail(fmt("max error %.3g >= 1e-9", max_err));
  if (elapsed >= 5.0) v.fail(fmt("took %.2fs (limit 5s)", elapsed));
  if (v.pass) v.detail = fmt("max error %.3g over 100 sequences, %.2fs",
                             max_err, elapsed);
  return v;
}

// --- 2. Truncation: every scope sequence is cut to the pooled minimum. ----

Verdict truncation_contract() {
  Verdict v;
  const auto pool = test::vocab_words();
  const auto tok = lexical::WordpieceTokenizer::load(
      {test::fixture_path("vocab.txt"), "acceptance"});
  Rng rng(202);
  for (int corpus_i = 0; corpus_i < 20 && v.pass; ++corpus_i) {
    std::vector<corpus::Transcript> corpus;
    const std::size_t n = 5 + rng.next_below(8);
    for (std::size_t t = 0; t < n; ++t) {
      test::SyntheticCorpusOptions o;
      o.interviewer_sentences = 2 + rng.next_below(4);
      o.interviewee_sentences = 3 + rng.next_below(5);
      o.words_lo = 4 + rng.next_below(4);
      o.words_hi = o.words_lo + 2 + rng.next_below(6);
      corpus.push_back(test::make_transcript(
          "t" + std::to_string(t),
          t % 3 == 0 ? corpus::Source::AI : corpus::Source::Human, rng, pool,
          o));
    }
    const auto report =
        lexical::entropy_report(corpus, tok, lexical::LMinMode::PerScope);
    for (std::size_t s = 0; s < 3 && v.pass; ++s) {
      std::size_t min_pre = SIZE_MAX;
      for (const auto& e : report.entries) {
        if (e.by_scope[s]) {
          min_pre = std::min(min_pre, e.by_scope[s]->pre_truncation_length);
        }
      }
      if (min_pre == SIZE_MAX) continue;
      if (!report.l_min[s] || *report.l_min[s] != min_pre) {
        v.fail("pooled minimum disagrees with the per-scope lengths");
      }
      for (const auto& e : report.entries) {
        if (e.by_scope[s] && e.by_scope[s]->truncated_length != min_pre) {
          v.fail("a sequence was not truncated to the pooled minimum");
          break;
        }
      }
    }
  }
  if (v.pass) v.detail = "20 corpora, all scopes cut to the pooled minimum";
  return v;
}

// --- 3. Similarity against brute-force pair loops. ------------------------

Verdict similarity_oracle() {
  Verdict v;
  Rng rng(303);
  const std::size_t dim = 16;
  const auto random_embedding = [&](std::size_t i) {
    semantic::SentenceEmbedding e;
    e.key = {"t", i % 2 ? corpus::Role::Interviewer : corpus::Role::Interviewee,
             i};
    e.vector.resize(dim);
    const float scale = 0.2f + static_cast<float>(rng.next_double()) * 5.0f;
    for (auto& x : e.vector) {
      x = static_cast<float>(rng.next_normal()) * scale;
    }
    return e;
  };
  const auto brute_cosine = [&](const std::vector<float>& a,
                                const std::vector<float>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dot += static_cast<double>(a[i]) * b[i];
      na += static_cast<double>(a[i]) * a[i];
      nb += static_cast<double>(b[i]) * b[i];
    }
    return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
  };
  double max_err = 0.0;
  for (std::size_t n_a = 0; n_a <= 6; ++n_a) {
    for (std::size_t n_b = 0; n_b <= 6; ++n_b) {
      std::vector<semantic::SentenceEmbedding> a, b;
      for (std::size_t i = 0; i < n_a; ++i) a.push_back(random_embedding(i));
      for (std::size_t i = 0; i < n_b; ++i) b.push_back(random_embedding(i));

      const auto internal = semantic::internal_similarity(a);
      if (internal.has_value() != (n_a >= 2)) {
        v.fail("internal similarity presence rule violated");
        continue;
      }
      if (internal) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_a; ++i) {
          for (std::size_t j = i + 1; j < n_a; ++j) {
            sum += brute_cosine(a[i].vector, a[j].vector);
          }
        }
        const double brute =
            sum / (static_cast<double>(n_a) * static_cast<double>(n_a - 1) / 2);
        max_err = std::max(max_err, std::abs(*internal - brute));
      }

      const auto cross = semantic::cross_similarity(a, b);
      if (cross.has_value() != (n_a >= 1 && n_b >= 1)) {
        v.fail("cross similarity presence rule violated");
        continue;
      }
      if (cross) {
        double sum = 0.0;
        for (const auto& ea : a) {
          for (const auto& eb : b) {
            sum += brute_cosine(ea.vector, eb.vector);
          }
        }
        const double brute =
            sum / (static_cast<double>(n_a) * static_cast<double>(n_b));
        max_err = std::max(max_err, std::abs(*cross - brute));
      }
    }
  }
  // Cosine is invariant under positive rescaling of either argument.
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(dim), w(dim), su(dim), sw(dim);
    const double f1 = 0.01 + rng.next_double() * 40.0;
    const double f2 = 0.01 + rng.next_double() * 40.0;
    for (std::size_t i = 0; i < dim; ++i) {
      u[i] = rng.next_normal();
      w[i] = rng.next_normal();
      su[i] = u[i] * f1;
      sw[i] = w[i] * f2;
    }
    max_err = std::max(max_err, std::abs(semantic::cosine(u, w) -
                                         semantic::cosine(su, sw)));
  }
  if (max_err >= 1e-12) v.fail(fmt("max error %.3g >= 1e-12", max_err));
  if (v.pass) v.detail = fmt("max error %.3g across 49 shapes", max_err);
  return v;
}

// --- 4. Tests and effect sizes against closed forms / enumeration. --------

double enumerated_mwu_p(const std::vector<double>& a,
                        const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  const auto rank_of = [&](double x) {
    // tie-free by construction
    return static_cast<double>(
               std::lower_bound(sorted.begin(), sorted.end(), x) -
               sorted.begin()) +
           1.0;
  };
  double r1 = 0.0;
  for (const double x : a) r1 += rank_of(x);
  const double u1 =
      r1 - static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;
  const double u2 = static_cast<double>(na) * static_cast<double>(n - na) - u1;
  const double u_max = std::max(u1, u2);

  // Walk all subsets of size na with an index combination.
  std::vector<std::size_t> idx(na);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t total = 0, at_least = 0;
  while (true) {
    double r = 0.0;
    for (const std::size_t i : idx) r += static_cast<double>(i) + 1.0;
    const double u =
        r - static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;
    const double other =
        static_cast<double>(na) * static_cast<double>(n - na) - u;
    ++total;
    if (std::max(u, other) >= u_max) ++at_least;
    // next combination
    std::size_t k = na;
    while (k > 0 && idx[k - 1] == n - na + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < na; ++j) idx[j] = idx[j - 1] + 1;
  }
  // The larger of the two U statistics is extreme whenever either tail is,
  // so this event already covers both sides; no doubling.
  return std::min(1.0,
                  static_cast<double>(at_least) / static_cast<double>(total));
}

Verdict statistics_oracle() {
  Verdict v;
  Rng rng(404);
  const boost::math::normal_distribution<double> nd;
  double max_t_err = 0.0, max_d_err = 0.0, max_exact_err = 0.0,
         max_approx_err = 0.0;
  bool saw_exact = false, saw_approx = false;
  for (int trial = 0; trial < 50; ++trial) {
    const bool exact_regime = trial % 2 == 0;
    std::vector<double> a, b;
    if (exact_regime) {
      const std::size_t na = 3 + rng.next_below(6), nb = 3 + rng.next_below(6);
      for (std::size_t i = 0; i < na; ++i) a.push_back(rng.next_normal());
      for (std::size_t i = 0; i < nb; ++i) {
        b.push_back(rng.next_normal() + 0.4);
      }
    } else {
      const std::size_t na = 25 + rng.next_below(36),
                        nb = 25 + rng.next_below(36);
      for (std::size_t i = 0; i < na; ++i) {
        a.push_back(std::round(rng.next_normal() * 10.0) / 10.0);
      }
      for (std::size_t i = 0; i < nb; ++i) {
        b.push_back(std::round((rng.next_normal() + 0.3) * 10.0) / 10.0);
      }
    }

    // Welch's t from first principles.
    const double ma = stats::mean(a), mb = stats::mean(b);
    const double sa = stats::sample_sd(a), sb = stats::sample_sd(b);
    const double na_d = static_cast<double>(a.size()),
                 nb_d = static_cast<double>(b.size());
    const double va = sa * sa / na_d, vb = sb * sb / nb_d;
    const double t_ref = (ma - mb) / std::sqrt(va + vb);
    const double df_ref = (va + vb) * (va + vb) /
                          (va * va / (na_d - 1) + vb * vb / (nb_d - 1));
    const boost::math::students_t_distribution<double> td(df_ref);
    const double p_ref =
        2.0 * boost::math::cdf(boost::math::complement(td, std::abs(t_ref)));
    const auto w = stats::welch_t(a, b);
    max_t_err = std::max({max_t_err, std::abs(w.t - t_ref),
                          std::abs(w.df - df_ref), std::abs(w.p - p_ref)});

    // Cohen's d from first principles.
    const double pooled =
        std::sqrt(((na_d - 1) * sa * sa + (nb_d - 1) * sb * sb) /
                  (na_d + nb_d - 2));
    max_d_err =
        std::max(max_d_err, std::abs(stats::cohens_d(a, b) -
                                     (ma - mb) / pooled));

    const auto mwu = stats::mann_whitney_u(a, b);
    if (exact_regime) {
      if (!mwu.exact) {
        v.fail("small tie-free sample did not use the exact distribution");
        continue;
      }
      saw_exact = true;
      max_exact_err = std::max(
          max_exact_err, std::abs(mwu.p - enumerated_mwu_p(a, b)));
    } else {
      if (mwu.exact) {
        v.fail("large/tied sample unexpectedly used the exact distribution");
        continue;
      }
      saw_approx = true;
      // Normal approximation with mid-ranks, tie correction and continuity.
      std::vector<double> pooled_v(a);
      pooled_v.insert(pooled_v.end(), b.begin(), b.end());
      std::vector<double> sorted = pooled_v;
      std::sort(sorted.begin(), sorted.end());
      double r1 = 0.0;
      for (const double x : a) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), x);
        const double first = static_cast<double>(lo - sorted.begin()) + 1.0;
        const double last = static_cast<double>(hi - sorted.begin());
        r1 += (first + last) / 2.0;
      }
      const double u1 = r1 - na_d * (na_d + 1) / 2.0;
      const double u_max = std::max(u1, na_d * nb_d - u1);
      const double n_d = na_d + nb_d;
      double tie_sum = 0.0;
      for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
      }
      const double var =
          na_d * nb_d / 12.0 *
          ((n_d + 1.0) - tie_sum / (n_d * (n_d - 1.0)));
      const double z = (u_max - na_d * nb_d / 2.0 - 0.5) / std::sqrt(var);
      const double p_approx = std::min(
          1.0, 2.0 * boost::math::cdf(boost::math::complement(nd, z)));
      max_approx_err = std::max(max_approx_err, std::abs(mwu.p - p_approx));
    }
  }
  if (max_t_err >= 1e-9) v.fail(fmt("t-test error %.3g >= 1e-9", max_t_err));
  if (max_d_err >= 1e-9) v.fail(fmt("d error %.3g >= 1e-9", max_d_err));
  if (max_exact_err >= 1e-12) {
    v.fail(fmt("exact U p error %.3g >= 1e-12", max_exact_err));
  }
  if (max_approx_err >= 1e-3) {
    v.fail(fmt("approx U p error %.3g >= 1e-3", max_approx_err));
  }
  if (!saw_exact || !saw_approx) v.fail("a U-test regime went unexercised");

  using stats::EffectLabel;
  if (stats::effect_label(0.392) != EffectLabel::Medium ||
      stats::effect_label(0.680) != EffectLabel::Large ||
      stats::effect_label(1.087) != EffectLabel::VeryLarge ||
      std::string(stats::to_string(EffectLabel::VeryLarge)) != "Very Large") {
    v.fail("effect-size labels disagree with the banding");
  }
  if (v.pass) {
    v.detail = fmt("t/d err %.2g, exact-U err %.2g", max_t_err,
                   std::max(max_exact_err, max_d_err)) +
               fmt(", approx-U err %.2g", max_approx_err);
  }
  return v;
}

// --- 5. Difference and improvement columns of the reference comparison. ---

Verdict difference_arithmetic() {
  Verdict v;
  struct Row {
    const char* name;
    double ai, human, diff, impr;
  };
  const Row rows[] = {
      {"entropy overall", 7.703, 7.273, 0.430, 5.9},
      {"entropy interviewee", 7.098, 6.907, 0.191, 2.8},
      {"entropy interviewer", 7.325, 6.762, 0.563, 8.3},
      {"sentence length interviewee", 16.500, 14.534, 1.966, 13.5},
      {"sentence length interviewer", 24.710, 18.797, 5.913, 31.4},
      {"similarity A interviewer", 0.697, 0.646, 0.051, 7.9},
      {"similarity A interviewee", 0.669, 0.656, 0.013, 2.0},
      {"similarity A cross", 0.652, 0.643, 0.009, 1.4},
      {"similarity B interviewer", 0.654, 0.596, 0.058, 9.7},
      {"similarity B interviewee", 0.686, 0.645, 0.041, 6.4},
      {"similarity B cross", 0.623, 0.606, 0.017, 2.8},
  };
  double worst_diff = 0.0, worst_impr = 0.0;
  for (const auto& r : rows) {
    const auto [diff, impr] = stats::diff_and_impr(r.ai, r.human);
    worst_diff = std::max(worst_diff, std::abs(diff - r.diff));
    worst_impr = std::max(worst_impr, std::abs(impr - r.impr));
    if (std::abs(diff - r.diff) > 0.001) {
      v.fail(std::string(r.name) + ": difference off by more than 0.001");
    }
    if (std::abs(impr - r.impr) > 0.15) {
      v.fail(std::string(r.name) + ": improvement off by more than 0.15pp");
    }
  }
  if (v.pass) {
    v.detail = fmt("11 rows; worst diff %.4f, worst impr %.3fpp", worst_diff,
                   worst_impr);
  }
  return v;
}

// --- 6. Logistic propensity model recovers known coefficients. ------------

Verdict propensity_recovery() {
  Verdict v;
  const std::vector<double> beta{-1.0, 0.8, -0.5, 0.3};
  int good = 0;
  double worst_fit_s = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(900 + seed);
    const Eigen::Index n = 2000;
    Eigen::MatrixXd x(n, 3);
    std::vector<int> treatment(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double lin = beta[0];
      for (int c = 0; c < 3; ++c) {
        x(i, c) = rng.next_normal();
        lin += beta[static_cast<std::size_t>(c) + 1] * x(i, c);
      }
      treatment[static_cast<std::size_t>(i)] =
          rng.next_double() < 1.0 / (1.0 + std::exp(-lin)) ? 1 : 0;
    }
    causal::CovariateMatrix m;
    m.x = x;
    m.treatment = treatment;
    m.columns = {"x1", "x2", "x3"};
    for (Eigen::Index i = 0; i < n; ++i) {
      m.ids.push_back(std::to_string(i));
    }
    const auto fit_start = std::chrono::steady_clock::now();
    const auto model = causal::fit_propensity(m);
    worst_fit_s = std::max(worst_fit_s, seconds_since(fit_start));

    bool ok = model.converged;
    for (std::size_t c = 0; c < beta.size() && ok; ++c) {
      ok = std::abs(model.coefficients[c] - beta[c]) <=
           3.0 * model.std_errors[c];
    }
    for (const double s : model.scores) {
      if (s <= 0.0 || s >= 1.0) ok = false;
    }
    if (ok) ++good;
  }
  if (good < 95) v.fail(fmt("only %.0f/100 seeds within 3 SEs", good));
  if (worst_fit_s >= 10.0) {
    v.fail(fmt("slowest fit %.2fs (limit 10s)", worst_fit_s));
  }
  if (v.pass) {
    v.detail = fmt("%.0f/100 seeds within 3 SEs, slowest fit %.3fs",
                   good, worst_fit_s);
  }
  return v;
}

// --- 7. Kernel values, caliper cutoffs and weight normalization. ----------

Verdict kernel_and_caliper() {
  Verdict v;
  if (causal::gaussian_kernel(0.0, 0.1) != 1.0) {
    v.fail("K(0) is not exactly 1");
  }
  if (std::abs(causal::gaussian_kernel(0.1, 0.1) - std::exp(-0.5)) >= 1e-12) {
    v.fail("K(h) at one bandwidth is not exp(-1/2)");
  }

  // A control beyond the caliper must get weight exactly zero.
  {
    const std::vector<double> scores{0.50, 0.52, 0.48, 0.05};
    const std::vector<int> treatment{1, 0, 0, 0};
    const std::vector<std::string> ids{"t", "c1", "c2", "far"};
    const auto match = causal::kernel_match(scores, treatment, ids, {});
    if (match.unit_weight[3] != 0.0) {
      v.fail("control outside the caliper kept nonzero weight");
    }
    for (const auto& p : match.pairs) {
      if (p.control == 3) v.fail("pair emitted beyond the caliper");
    }
  }

  // Random scores: every retained treated unit's weights sum to one.
  Rng rng(707);
  const std::size_t n = 200;
  std::vector<double> scores(n);
  std::vector<int> treatment(n);
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = 0.05 + 0.9 * rng.next_double();
    treatment[i] = i < 40 ? 1 : 0;
    ids[i] = std::to_string(i);
  }
  const auto match = causal::kernel_match(scores, treatment, ids, {});
  std::map<std::size_t, double> per_treated;
  for (const auto& p : match.pairs) {
    per_treated[p.treated] += p.weight;
    const double d = std::abs(scores[p.treated] - scores[p.control]);
    if (d > match.caliper) v.fail("pair distance exceeds the caliper");
  }
  double worst = 0.0;
  for (const auto& [t, sum] : per_treated) {
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  if (worst >= 1e-12) {
    v.fail(fmt("treated weight sum off by %.3g", worst));
  }
  const std::size_t retained = per_treated.size();
  if (retained + match.dropped.size() != 40) {
    v.fail("retained + dropped treated units do not add up");
  }
  if (v.pass) {
    v.detail = fmt("worst weight-sum deviation %.2g, %.0f/40 treated retained",
                   worst, static_cast<double>(retained));
  }
  return v;
}

// --- 8. Matching removes a built-in 1.2 SMD confound. ---------------------

Verdict balance_improvement() {
  Verdict v;
  int good = 0;
  double mean_pre = 0.0, mean_post = 0.0;
  const std::size_t n = 6000, n_treated = 600;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(3000 + seed);
    causal::CovariateMatrix m;
    m.columns = {"c1", "c2"};
    m.x.resize(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
      const bool treated = i < n_treated;
      m.treatment.push_back(treated ? 1 : 0);
      m.ids.push_back(std::to_string(i));
      const auto ei = static_cast<Eigen::Index>(i);
      m.x(ei, 0) = rng.next_normal() + (treated ? 1.2 : 0.0);
      m.x(ei, 1) = rng.next_normal() + (treated ? 1.2 : 0.0);
    }
    const auto model = causal::fit_propensity(m);
    const auto match =
        causal::kernel_match(model.scores, m.treatment, m.ids, {});
    const auto balance = causal::smd_balance(m, match);
    bool ok = true;
    for (const auto& row : balance.rows) {
      if (!row.smd_pre || !row.smd_post) {
        ok = false;
        continue;
      }
      mean_pre += *row.smd_pre / 200.0;
      mean_post += std::abs(*row.smd_post) / 200.0;
      if (std::abs(*row.smd_post) >= 0.1) ok = false;
    }
    if (ok) ++good;
  }
  if (good < 90) {
    v.fail(fmt("only %.0f/100 seeds balanced below 0.1", good));
  }
  if (v.pass) {
    v.detail = fmt("%.0f/100 seeds; mean SMD %.3f before, %.3f after", good,
                   mean_pre, mean_post);
  } else {
    v.detail += fmt(" (mean SMD %.3f before, %.3f after)", mean_pre, mean_post);
  }
  return v;
}

// --- 9. The full causal chain recovers a known effect; placebo stays null. -

Verdict effect_recovery() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const double tau = 0.5;
  const std::size_t n = 1392;
  int covered = 0, placebo_null = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(5000 + seed);
    causal::CovariateMatrix m;
    m.columns = {"x1", "x2"};
    m.x.resize(static_cast<Eigen::Index>(n), 2);
    std::vector<double> outcome(n), placebo(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ei = static_cast<Eigen::Index>(i);
      m.x(ei, 0) = rng.next_normal();
      m.x(ei, 1) = rng.next_normal();
      const double lin = -2.2 + 0.8 * m.x(ei, 0) + 0.8 * m.x(ei, 1);
      const int t = rng.next_double() < 1.0 / (1.0 + std::exp(-lin)) ? 1 : 0;
      m.treatment.push_back(t);
      m.ids.push_back(std::to_string(i));
      outcome[i] = 1.0 + 0.7 * m.x(ei, 0) - 0.4 * m.x(ei, 1) + tau * t +
                   rng.next_normal();
      placebo[i] = rng.next_normal();
    }
    const auto transformed = causal::transform_covariates(m);
    const auto model = causal::fit_propensity(transformed);
    const auto match =
        causal::kernel_match(model.scores, m.treatment, m.ids, {});
    const auto est = causal::estimate_ate("outcome", outcome, m, match);
    if (est.ci_95[0] <= tau && tau <= est.ci_95[1]) ++covered;
    const auto pl = causal::placebo_test("placebo", placebo, m, match);
    if (std::abs(pl.t) < 1.96) ++placebo_null;
  }
  const double elapsed = seconds_since(start);
  if (covered < 90) v.fail(fmt("CI covered in only %.0f/100 seeds", covered));
  if (placebo_null < 90) {
    v.fail(fmt("placebo |t|<1.96 in only %.0f/100 seeds", placebo_null));
  }
  if (elapsed >= 300.0) v.fail(fmt("took %.1fs (limit 300s)", elapsed));
  if (v.pass) {
    v.detail = fmt("coverage %.0f/100, placebo null %.0f/100, %.1fs", covered,
                   placebo_null, elapsed);
  }
  return v;
}

// --- 10. Byte-identical reports, at scale, across thread counts. ----------

Verdict determinism_at_scale() {
  Verdict v;
  const auto dir = test::tmp_dir("acceptance_scale");
  const auto pool = test::vocab_words();
  Rng rng(8080);

  // ~1,400 transcripts of ~3,000 tokens: 26-34 sentences of ~100 words each.
  // Sentence counts vary so no covariate column is constant.
  std::vector<corpus::Transcript> all;
  const auto draw_opts = [&rng] {
    test::SyntheticCorpusOptions o;
    o.interviewer_sentences = 10 + rng.next_below(5);
    o.interviewee_sentences = 16 + rng.next_below(5);
    o.words_lo = 90;
    o.words_hi = 110;
    o.sentences_per_turn = 3;
    return o;
  };
  for (int i = 0; i < 121; ++i) {
    all.push_back(test::make_transcript("ai-" + std::to_string(i),
                                        corpus::Source::AI, rng, pool,
                                        draw_opts()));
  }
  for (int i = 0; i < 1279; ++i) {
    all.push_back(test::make_transcript("hum-" + std::to_string(i),
                                        corpus::Source::Human, rng, pool,
                                        draw_opts()));
  }
  io::write_file((dir / "input.jsonl").string(),
                 corpus::to_canonical_jsonl(all));
  test::write_embedding_file(all, "alpha-embed", 32, dir / "alpha.vectors");
  test::write_embedding_file(all, "beta-embed", 32, dir / "beta.vectors");

  const auto make_config = [&](const std::string& out, unsigned threads) {
    nlohmann::ordered_json cfg;
    cfg["seed"] = 11;
    cfg["threads"] = threads;
    cfg["output_dir"] = (dir / out).string();
    cfg["inputs"] = nlohmann::ordered_json::array(
        {{{"path", (dir / "input.jsonl").string()}, {"format", "canonical"}}});
    cfg["filter"] = {{"min_chars", 100}};
    cfg["tokenizer"] = {{"vocab", test::fixture_path("vocab.txt").string()},
                        {"name", "acceptance"}};
    cfg["embedding"] = {
        {"providers",
         nlohmann::ordered_json::array(
             {{{"kind", "precomputed"},
               {"model_name", "alpha-embed"},
               {"dimension", 32},
               {"path", (dir / "alpha.vectors").string()}},
              {{"kind", "precomputed"},
               {"model_name", "beta-embed"},
               {"dimension", 32},
               {"path", (dir / "beta.vectors").string()}}})}};
    cfg["compare"] = {{"bootstrap_replicates", 10000}};
    const auto path = dir / ("config_" + out + ".json");
    io::write_file(path.string(), cfg.dump(2) + "\n");
    return path.string();
  };

  const auto run_pipeline = [&](const std::string& config) {
    for (const char* sub : {"ingest", "metrics", "compare", "psm", "report"}) {
      const char* argv[] = {"ivq", sub, "--config", config.c_str()};
      if (cli::run(4, argv) != 0) return false;
    }
    return true;
  };

  double slowest = 0.0;
  for (const auto& [out, threads] :
       std::vector<std::pair<std::string, unsigned>>{
           {"run1", 1}, {"run2", 1}, {"run3", 8}}) {
    const auto config = make_config(out, threads);
    const auto start = std::chrono::steady_clock::now();
    if (!run_pipeline(config)) {
      v.fail("pipeline returned a nonzero status for " + out);
    }
    slowest = std::max(slowest, seconds_since(start));
  }
  if (!v.pass) return v;

  const auto bundle = [&](const std::string& out) {
    return io::read_file((dir / out / "report_bundle.json").string());
  };
  const std::string b1 = bundle("run1");
  if (b1 != bundle("run2")) v.fail("repeat run changed the report bundle");
  if (b1 != bundle("run3")) {
    v.fail("8-thread run changed the report bundle");
  }
  if (slowest >= 180.0) {
    v.fail(fmt("slowest run %.1fs (limit 180s)", slowest));
  }
  if (v.pass) {
    v.detail = fmt("3 identical bundles over 1,400 transcripts; slowest run "
                   "%.1fs",
                   slowest);
  }
  return v;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Verdict (*run)();
  };
  const Entry entries[] = {
      {"entropy oracle", entropy_oracle},
      {"truncation contract", truncation_contract},
      {"similarity oracle", similarity_oracle},
      {"statistics oracle", statistics_oracle},
      {"difference arithmetic", difference_arithmetic},
      {"propensity recovery", propensity_recovery},
      {"kernel and caliper", kernel_and_caliper},
      {"balance improvement", balance_improvement},
      {"effect recovery and placebo", effect_recovery},
      {"determinism at scale", determinism_at_scale},
  };
  bool all = true;
  int id = 0;
  for (const auto& e : entries) {
    ++id;
    Verdict verdict;
    try {
      verdict = e.run();
    } catch (const std::exception& ex) {
      verdict.pass = false;
      verdict.detail = std::string("exception: ") + ex.what();
    }
    all = all && verdict.pass;
    std::printf("criterion %d (%s): %s — %s\n", id, e.name,
                verdict.pass ? "PASS" : "FAIL", verdict.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
