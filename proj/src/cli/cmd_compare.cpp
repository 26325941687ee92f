#include <cstdio>
#include <functional>

#include <nlohmann/json.hpp>

#include "ivq/cli/commands.hpp"
#include "ivq/cli/pipeline.hpp"
#include "ivq/error.hpp"
#include "ivq/stats/compare.hpp"
#include "ivq/text_io.hpp"
#include "ivq/version.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

struct MetricSpec {
  std::string name;
  std::function<std::optional<double>(const MetricsRow&)> value;
};

std::vector<MetricSpec> metric_specs(const MetricsData& data) {
  std::vector<MetricSpec> specs;
  static const char* scope_names[3] = {"overall", "interviewer", "interviewee"};
  for (std::size_t s : {0, 1, 2}) {
    specs.push_back({std::string("entropy_") + scope_names[s],
                     [s](const MetricsRow& r) { return r.entropy[s]; }});
  }
  for (std::size_t s : {0, 1, 2}) {
    specs.push_back({std::string("tokens_per_sentence_") + scope_names[s],
                     [s](const MetricsRow& r) { return r.tps_mean[s]; }});
  }
  for (const auto& model : data.models) {
    specs.push_back({"similarity_" + model + "_interviewer_internal",
                     [model](const MetricsRow& r) -> std::optional<double> {
                       auto it = r.similarity.find(model);
                       if (it == r.similarity.end()) return std::nullopt;
                       return it->second.interviewer_internal;
                     }});
    specs.push_back({"similarity_" + model + "_interviewee_internal",
                     [model](const MetricsRow& r) -> std::optional<double> {
                       auto it = r.similarity.find(model);
                       if (it == r.similarity.end()) return std::nullopt;
                       return it->second.interviewee_internal;
                     }});
    specs.push_back({"similarity_" + model + "_cross",
                     [model](const MetricsRow& r) -> std::optional<double> {
                       auto it = r.similarity.find(model);
                       if (it == r.similarity.end()) return std::nullopt;
                       return it->second.cross;
                     }});
  }
  return specs;
}

std::string opt_cell(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string();
}

}  // namespace

int cmd_compare(const RunConfig& cfg) {
  write_resolved_config(cfg);
  const MetricsData data = load_metrics(cfg);

  json table1 = json::array();
  json table2 = json::array();
  io::CsvWriter csv1, csv2;
  csv1.row({"metric", "ai_n", "ai_mean", "ai_sd", "human_n", "human_mean",
            "human_sd", "diff", "impr_pct"});
  csv2.row({"metric", "t", "t_df", "t_p", "cohens_d", "d_ci_lo", "d_ci_hi",
            "mwu_u", "mwu_p", "mwu_exact", "effect_label", "testable", "note"});

  std::size_t emitted = 0, skipped = 0;
  for (const auto& spec : metric_specs(data)) {
    std::vector<double> ai, human;
    for (const auto& row : data.rows) {
      const auto v = spec.value(row);
      if (!v) continue;
      (row.source == corpus::Source::AI ? ai : human).push_back(*v);
    }
    if (ai.empty() || human.empty()) {
      ++skipped;
      json j1;
      j1["metric"] = spec.name;
      j1["ai_n"] = ai.size();
      j1["human_n"] = human.size();
      j1["note"] = "no data for a group";
      table1.push_back(j1);
      table2.push_back(std::move(j1));
      csv1.row({spec.name, std::to_string(ai.size()), "", "",
                std::to_string(human.size()), "", "", "", ""});
      csv2.row({spec.name, "", "", "", "", "", "", "", "", "", "", "false",
                "no data for a group"});
      continue;
    }

    stats::CompareOptions opts;
    opts.bootstrap.replicates = cfg.bootstrap_replicates;
    opts.bootstrap.seed = metric_seed(cfg.seed, spec.name);
    opts.bootstrap.threads = cfg.threads;
    const auto row = stats::compare_groups(spec.name, ai, human, opts);
    ++emitted;

    json j1;
    j1["metric"] = row.metric_name;
    j1["ai_n"] = row.ai_n;
    j1["ai_mean"] = row.ai_mean;
    if (row.ai_sd) j1["ai_sd"] = *row.ai_sd;
    j1["human_n"] = row.human_n;
    j1["human_mean"] = row.human_mean;
    if (row.human_sd) j1["human_sd"] = *row.human_sd;
    j1["diff"] = row.diff;
    if (row.impr_pct) j1["impr_pct"] = *row.impr_pct;
    table1.push_back(std::move(j1));
    csv1.row({row.metric_name, std::to_string(row.ai_n),
              io::format_double(row.ai_mean), opt_cell(row.ai_sd),
              std::to_string(row.human_n), io::format_double(row.human_mean),
              opt_cell(row.human_sd), io::format_double(row.diff),
              opt_cell(row.impr_pct)});

    json j2;
    j2["metric"] = row.metric_name;
    if (row.welch) {
      j2["t"] = row.welch->t;
      j2["t_df"] = row.welch->df;
      j2["t_p"] = row.welch->p;
    }
    if (row.d) {
      j2["cohens_d"] = row.d->d;
      j2["d_ci_95"] = {row.d->ci_95[0], row.d->ci_95[1]};
    }
    if (row.mwu) {
      j2["mwu_u"] = row.mwu->u;
      j2["mwu_p"] = row.mwu->p;
      j2["mwu_exact"] = row.mwu->exact;
    }
    if (row.label) j2["effect_label"] = stats::to_string(*row.label);
    j2["testable"] = row.testable;
    if (!row.note.empty()) j2["note"] = row.note;
    table2.push_back(std::move(j2));
    csv2.row({row.metric_name,
              row.welch ? io::format_double(row.welch->t) : "",
              row.welch ? io::format_double(row.welch->df) : "",
              row.welch ? io::format_double(row.welch->p) : "",
              row.d ? io::format_double(row.d->d) : "",
              row.d ? io::format_double(row.d->ci_95[0]) : "",
              row.d ? io::format_double(row.d->ci_95[1]) : "",
              row.mwu ? io::format_double(row.mwu->u) : "",
              row.mwu ? io::format_double(row.mwu->p) : "",
              row.mwu ? (row.mwu->exact ? "true" : "false") : "",
              row.label ? stats::to_string(*row.label) : "",
              row.testable ? "true" : "false", row.note});
  }

  json out1, out2;
  out1["schema_version"] = kSchemaVersion;
  out1["seed"] = cfg.seed;
  out1["rows"] = std::move(table1);
  out2["schema_version"] = kSchemaVersion;
  out2["seed"] = cfg.seed;
  out2["bootstrap_replicates"] = cfg.bootstrap_replicates;
  out2["rows"] = std::move(table2);
  io::write_file(cfg.output_dir + "/table1.json", out1.dump(2) + "\n");
  io::write_file(cfg.output_dir + "/table2.json", out2.dump(2) + "\n");
  io::write_file(cfg.output_dir + "/table1.csv", csv1.str());
  io::write_file(cfg.output_dir + "/table2.csv", csv2.str());

  std::printf("compare: %zu metric rows (%zu without data)\n", emitted,
              skipped);
  return 0;
}

}  // namespace ivq::cli
