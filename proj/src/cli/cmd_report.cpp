#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ivq/cli/commands.hpp"
#include "ivq/cli/pipeline.hpp"
#include "ivq/error.hpp"
#include "ivq/text_io.hpp"
#include "ivq/version.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

json load_json(const std::string& dir, const char* file, const char* cmd) {
  const std::string path = dir + "/" + file;
  if (!std::filesystem::exists(path)) {
    throw DataError(std::string(file) + " not found in " + dir + "; run `ivq " +
                    cmd + "` first");
  }
  try {
    return json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw DataError(std::string(file) + ": " + e.what());
  }
}

struct DensitySpec {
  std::string name;
  std::function<std::optional<double>(const MetricsRow&)> get;
};

}  // namespace

int cmd_report(const RunConfig& cfg) {
  const json metrics_json = load_json(cfg.output_dir, "metrics.json", "metrics");
  const json table1 = load_json(cfg.output_dir, "table1.json", "compare");
  const json table2 = load_json(cfg.output_dir, "table2.json", "compare");
  const json table3 = load_json(cfg.output_dir, "table3.json", "psm");
  const json balance = load_json(cfg.output_dir, "balance.json", "psm");
  const json diag = load_json(cfg.output_dir, "psm_diagnostics.json", "psm");

  json bundle;
  bundle["schema_version"] = kSchemaVersion;
  bundle["tool_version"] = kVersion;
  json meta;
  meta["seed"] = cfg.seed;
  meta["lmin_mode"] = metrics_json.value("lmin_mode", "");
  meta["l_min"] = metrics_json.contains("l_min") ? metrics_json["l_min"]
                                                 : json(nullptr);
  meta["models"] = metrics_json.contains("models") ? metrics_json["models"]
                                                   : json(nullptr);
  json psm_meta;
  if (diag.contains("matching")) {
    psm_meta["bandwidth"] = diag["matching"].value("bandwidth", 0.0);
    psm_meta["caliper"] = diag["matching"].value("caliper", 0.0);
    psm_meta["dropped_treated"] =
        diag["matching"].contains("dropped_treated")
            ? diag["matching"]["dropped_treated"]
            : json::array();
  }
  if (diag.contains("treatment")) {
    psm_meta["treatment_share"] = diag["treatment"].value("share", 0.0);
  }
  meta["psm"] = std::move(psm_meta);
  bundle["metadata"] = std::move(meta);
  bundle["table1"] = table1;
  bundle["table2"] = table2;
  bundle["table3"] = table3;
  bundle["balance"] = balance;
  io::write_file(cfg.output_dir + "/report_bundle.json", bundle.dump(2) + "\n");

  // Per-metric, per-group density histograms on a shared pooled range so the
  // two curves are directly comparable.
  const MetricsData metrics = load_metrics(cfg);
  std::vector<DensitySpec> specs;
  const auto scopes = std::array<lexical::Scope, 3>{
      lexical::Scope::Overall, lexical::Scope::InterviewerOnly,
      lexical::Scope::IntervieweeOnly};
  for (std::size_t s = 0; s < 3; ++s) {
    specs.push_back({"entropy_" + std::string(to_string(scopes[s])),
                     [s](const MetricsRow& r) { return r.entropy[s]; }});
  }
  for (std::size_t s = 0; s < 3; ++s) {
    specs.push_back({"tokens_per_sentence_" + std::string(to_string(scopes[s])),
                     [s](const MetricsRow& r) { return r.tps_mean[s]; }});
  }
  const auto sim_field =
      [](const MetricsRow& r, const std::string& model,
         int which) -> std::optional<double> {
    const auto it = r.similarity.find(model);
    if (it == r.similarity.end()) return std::nullopt;
    switch (which) {
      case 0: return it->second.interviewer_internal;
      case 1: return it->second.interviewee_internal;
      default: return it->second.cross;
    }
  };
  for (const auto& model : metrics.models) {
    static constexpr const char* kSimNames[3] = {
        "interviewer_internal", "interviewee_internal", "cross_similarity"};
    for (int which = 0; which < 3; ++which) {
      specs.push_back({"similarity_" + model + "_" + kSimNames[which],
                       [model, which, &sim_field](const MetricsRow& r) {
                         return sim_field(r, model, which);
                       }});
    }
  }

  io::CsvWriter csv;
  csv.row({"metric", "group", "bin_lo", "bin_hi", "count", "density"});
  const std::size_t bins = cfg.histogram_bins;
  for (const auto& spec : specs) {
    std::vector<double> ai, human;
    for (const auto& r : metrics.rows) {
      const auto v = spec.get(r);
      if (!v) continue;
      (r.source == corpus::Source::AI ? ai : human).push_back(*v);
    }
    if (ai.empty() && human.empty()) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto* g : {&ai, &human}) {
      for (double v : *g) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    for (const auto* g : {&ai, &human}) {
      if (g->empty()) continue;
      std::vector<std::size_t> counts(bins, 0);
      for (double v : *g) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= bins) b = bins - 1;
        counts[b]++;
      }
      const double n = static_cast<double>(g->size());
      for (std::size_t b = 0; b < bins; ++b) {
        csv.row({spec.name, g == &ai ? "AI" : "Human",
                 io::format_double(lo + width * static_cast<double>(b)),
                 io::format_double(lo + width * static_cast<double>(b + 1)),
                 std::to_string(counts[b]),
                 io::format_double(static_cast<double>(counts[b]) /
                                   (n * width))});
      }
    }
  }
  io::write_file(cfg.output_dir + "/density.csv", csv.str());

  std::printf("report: wrote report_bundle.json and density.csv (%zu metrics, "
              "%zu bins)\n",
              specs.size(), bins);
  return 0;
}

}  // namespace ivq::cli
