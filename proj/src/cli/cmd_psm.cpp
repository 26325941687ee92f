#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "ivq/causal/balance.hpp"
#include "ivq/causal/covariates.hpp"
#include "ivq/causal/estimate.hpp"
#include "ivq/causal/matching.hpp"
#include "ivq/causal/propensity.hpp"
#include "ivq/causal/transforms.hpp"
#include "ivq/cli/commands.hpp"
#include "ivq/cli/pipeline.hpp"
#include "ivq/corpus/segment.hpp"
#include "ivq/error.hpp"
#include "ivq/semantic/embedding.hpp"
#include "ivq/semantic/similarity.hpp"
#include "ivq/text_io.hpp"
#include "ivq/version.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

std::optional<double> mean_similarity(const MetricsRow& r,
                                      const std::string& model) {
  const auto it = r.similarity.find(model);
  if (it == r.similarity.end()) return std::nullopt;
  const auto& s = it->second;
  if (!s.interviewer_internal || !s.interviewee_internal || !s.cross) {
    return std::nullopt;
  }
  return (*s.interviewer_internal + *s.interviewee_internal + *s.cross) / 3.0;
}

causal::CovariateMatrix drop_column(const causal::CovariateMatrix& m,
                                    const std::string& name) {
  causal::CovariateMatrix out;
  out.ids = m.ids;
  out.treatment = m.treatment;
  out.x.resize(m.x.rows(), m.x.cols() - 1);
  Eigen::Index dst = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.columns[c] == name) continue;
    out.columns.push_back(m.columns[c]);
    out.x.col(dst++) = m.x.col(static_cast<Eigen::Index>(c));
  }
  if (out.columns.size() != m.columns.size() - 1) {
    throw DataError("drop_column: no column named " + name);
  }
  return out;
}

json estimate_to_json(const causal::AteEstimate& e, const char* kind) {
  json j;
  j["outcome"] = e.outcome_name;
  j["kind"] = kind;
  j["ate"] = e.ate;
  j["se"] = e.se;
  j["t"] = e.t;
  j["p"] = e.p;
  j["ci_95"] = {e.ci_95[0], e.ci_95[1]};
  j["significant"] = e.significant ? "Yes" : "No";
  if (e.placebo_pass) j["placebo_pass"] = *e.placebo_pass;
  return j;
}

void estimate_to_csv(io::CsvWriter& csv, const causal::AteEstimate& e,
                     const char* kind) {
  csv.row({e.outcome_name, kind, io::format_double(e.ate),
           io::format_double(e.se), io::format_double(e.t),
           io::format_double(e.p), io::format_double(e.ci_95[0]),
           io::format_double(e.ci_95[1]), e.significant ? "Yes" : "No",
           e.placebo_pass ? (*e.placebo_pass ? "pass" : "fail") : ""});
}

}  // namespace

int cmd_psm(const RunConfig& cfg) {
  write_resolved_config(cfg);
  const auto corpus = load_ingested_corpus(cfg);
  const MetricsData metrics = load_metrics(cfg);
  if (metrics.skip_semantic) {
    throw DataError("metrics were generated with --skip-semantic; similarity "
                    "outcomes are missing. Rerun `ivq metrics`.");
  }
  if (cfg.providers.empty()) {
    throw ConfigError("psm needs at least one embedding provider");
  }
  const auto tokenizer = load_tokenizer(cfg);
  const auto seg = segmentation_options(cfg);

  std::map<std::string, const MetricsRow*> by_id;
  for (const auto& r : metrics.rows) by_id[r.id] = &r;

  // Outcomes must be complete for every analyzed transcript so that one
  // matched sample serves every regression.
  const std::string alt_model =
      cfg.providers.size() >= 2 ? cfg.providers.back().model_name : "";
  std::vector<corpus::Transcript> analyzed;
  std::vector<std::string> incomplete;
  for (const auto& t : corpus) {
    const auto it = by_id.find(t.id);
    if (it == by_id.end()) {
      throw DataError("metrics file lacks transcript '" + t.id +
                      "'; rerun `ivq metrics`");
    }
    const MetricsRow& r = *it->second;
    const bool complete =
        r.entropy[0] && r.entropy[1] && r.entropy[2] && r.tps_mean[0] &&
        mean_similarity(r, semantic::kCrossModel) &&
        (alt_model.empty() || mean_similarity(r, alt_model));
    if (complete) {
      analyzed.push_back(t);
    } else {
      incomplete.push_back(t.id);
    }
  }

  const auto segmented = corpus::segment_corpus(analyzed, seg);
  auto primary = cfg.providers.front();
  std::string cache_name = primary.model_name;
  std::replace(cache_name.begin(), cache_name.end(), '/', '_');
  const auto embeddings = semantic::embed_sentences(
      segmented.sentences, primary,
      cfg.cache_dir + "/" + cache_name + ".embcache");

  const auto base =
      causal::build_covariates(analyzed, embeddings, tokenizer, seg,
                               cfg.threads);
  const auto transformed = causal::transform_covariates(base);

  causal::PropensityOptions popts;
  const auto model = causal::fit_propensity(transformed, popts);

  causal::MatchOptions mopts;
  mopts.bandwidth = cfg.psm_bandwidth;
  mopts.caliper_multiplier = cfg.psm_caliper_multiplier;
  const auto match =
      causal::kernel_match(model.scores, base.treatment, base.ids, mopts);

  const causal::CovariateMatrix& design =
      cfg.psm_transformed_ols ? transformed : base;

  const auto outcome_vector =
      [&](const std::function<std::optional<double>(const MetricsRow&)>& get) {
        std::vector<double> out;
        out.reserve(base.rows());
        for (const auto& id : base.ids) {
          const auto v = get(*by_id.at(id));
          if (!v) {
            throw DataError("outcome unexpectedly missing for '" + id + "'");
          }
          out.push_back(*v);
        }
        return out;
      };

  std::vector<causal::AteEstimate> ates;
  ates.push_back(causal::estimate_ate(
      "entropy_overall",
      outcome_vector([](const MetricsRow& r) { return r.entropy[0]; }), design,
      match));
  ates.push_back(causal::estimate_ate(
      "entropy_interviewee",
      outcome_vector([](const MetricsRow& r) { return r.entropy[2]; }), design,
      match));
  ates.push_back(causal::estimate_ate(
      "entropy_interviewer",
      outcome_vector([](const MetricsRow& r) { return r.entropy[1]; }), design,
      match));
  ates.push_back(causal::estimate_ate(
      "mean_sentence_length",
      outcome_vector([](const MetricsRow& r) { return r.tps_mean[0]; }), design,
      match));
  ates.push_back(causal::estimate_ate(
      "average_similarity",
      outcome_vector([](const MetricsRow& r) {
        return mean_similarity(r, semantic::kCrossModel);
      }),
      design, match));
  if (!alt_model.empty()) {
    ates.push_back(causal::estimate_ate(
        "alternative_similarity",
        outcome_vector([&](const MetricsRow& r) {
          return mean_similarity(r, alt_model);
        }),
        design, match));
  }

  // Placebo outcomes. Sentence count doubles as a covariate, so it is removed
  // from its own regression's design.
  std::map<std::string, double> ratio_by_id;
  for (const auto& t : analyzed) ratio_by_id[t.id] = causal::digit_ratio(t);
  std::vector<causal::AteEstimate> placebos;
  {
    std::vector<double> y;
    y.reserve(base.rows());
    for (const auto& id : base.ids) y.push_back(ratio_by_id.at(id));
    placebos.push_back(causal::placebo_test("placebo_digit_ratio", y, base,
                                            match));
  }
  {
    const auto col = static_cast<Eigen::Index>(
        std::find(base.columns.begin(), base.columns.end(),
                  std::string("total_sentences")) -
        base.columns.begin());
    std::vector<double> y;
    y.reserve(base.rows());
    for (std::size_t i = 0; i < base.rows(); ++i) {
      y.push_back(base.x(static_cast<Eigen::Index>(i), col));
    }
    placebos.push_back(causal::placebo_test(
        "placebo_sentence_count", y, drop_column(base, "total_sentences"),
        match));
  }

  const auto balance = causal::smd_balance(base, match);

  std::size_t treated = 0;
  for (int t : base.treatment) treated += static_cast<std::size_t>(t);
  const double share =
      static_cast<double>(treated) / static_cast<double>(base.rows());

  // Outputs.
  json table3;
  table3["schema_version"] = kSchemaVersion;
  table3["seed"] = cfg.seed;
  table3["rows"] = json::array();
  io::CsvWriter csv;
  csv.row({"outcome", "kind", "ate", "se", "t", "p", "ci_lo", "ci_hi",
           "significant", "placebo"});
  for (const auto& e : ates) {
    table3["rows"].push_back(estimate_to_json(e, "ate"));
    estimate_to_csv(csv, e, "ate");
  }
  for (const auto& e : placebos) {
    table3["rows"].push_back(estimate_to_json(e, "placebo"));
    estimate_to_csv(csv, e, "placebo");
  }
  if (alt_model.empty()) {
    table3["notes"] = json::array(
        {"alternative_similarity omitted: a single embedding provider is "
         "configured"});
  }
  io::write_file(cfg.output_dir + "/table3.json", table3.dump(2) + "\n");
  io::write_file(cfg.output_dir + "/table3.csv", csv.str());

  json jbal;
  jbal["schema_version"] = kSchemaVersion;
  jbal["rows"] = json::array();
  io::CsvWriter bal_csv;
  bal_csv.row({"covariate", "smd_pre", "smd_post", "pct_improvement", "flag"});
  for (const auto& row : balance.rows) {
    json jr;
    jr["covariate"] = row.column;
    if (row.smd_pre) jr["smd_pre"] = *row.smd_pre;
    if (row.smd_post) jr["smd_post"] = *row.smd_post;
    if (row.pct_improvement) jr["pct_improvement"] = *row.pct_improvement;
    if (!row.flag.empty()) jr["flag"] = row.flag;
    jbal["rows"].push_back(std::move(jr));
    const auto cell = [](const std::optional<double>& v) {
      return v ? io::format_double(*v) : std::string();
    };
    bal_csv.row({row.column, cell(row.smd_pre), cell(row.smd_post),
                 cell(row.pct_improvement), row.flag});
  }
  io::write_file(cfg.output_dir + "/balance.json", jbal.dump(2) + "\n");
  io::write_file(cfg.output_dir + "/balance.csv", bal_csv.str());

  json diag;
  diag["schema_version"] = kSchemaVersion;
  diag["seed"] = cfg.seed;
  diag["treatment"] = {
      {"treated", treated},
      {"control", base.rows() - treated},
      {"share", share},
      {"within_psm_guidance", share >= 0.05 && share <= 0.50}};
  json coef;
  coef["intercept"] = model.coefficients[0];
  for (std::size_t c = 0; c < transformed.cols(); ++c) {
    coef[transformed.columns[c]] = model.coefficients[c + 1];
  }
  diag["propensity"] = {{"converged", model.converged},
                        {"iterations", model.iterations},
                        {"ridge", popts.ridge},
                        {"score_clip", popts.score_clip},
                        {"coefficients", std::move(coef)},
                        {"near_boundary", model.near_boundary}};
  // Fixed 20-bin score histogram per group for plotting.
  constexpr std::size_t kBins = 20;
  std::vector<std::size_t> h_treated(kBins, 0), h_control(kBins, 0);
  for (std::size_t i = 0; i < model.scores.size(); ++i) {
    auto bin = static_cast<std::size_t>(model.scores[i] *
                                        static_cast<double>(kBins));
    if (bin >= kBins) bin = kBins - 1;
    (base.treatment[i] == 1 ? h_treated : h_control)[bin]++;
  }
  diag["score_histogram"] = {{"bins", kBins},
                             {"treated", h_treated},
                             {"control", h_control}};
  diag["matching"] = {{"bandwidth", match.bandwidth},
                      {"caliper", match.caliper},
                      {"retained_treated", treated - match.dropped.size()},
                      {"dropped_treated", match.dropped_ids},
                      {"pairs", match.pairs.size()}};
  diag["excluded_incomplete"] = incomplete;
  diag["covariate_warnings"] = base.warnings;
  diag["notes"] = base.notes;
  json tnotes = json::array();
  for (const auto& n : transformed.notes) tnotes.push_back(n);
  diag["transform_notes"] = std::move(tnotes);
  io::write_file(cfg.output_dir + "/psm_diagnostics.json",
                 diag.dump(2) + "\n");

  std::printf("psm: %zu analyzed (%zu treated, share %.1f%%), "
              "%zu treated dropped, %zu ATE + %zu placebo rows\n",
              base.rows(), treated, share * 100.0, match.dropped.size(),
              ates.size(), placebos.size());
  return 0;
}

}  // namespace ivq::cli
