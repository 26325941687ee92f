#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ivq/cli/commands.hpp"
#include "ivq/cli/config.hpp"
#include "ivq/error.hpp"
#include "ivq/version.hpp"

namespace ivq::cli {

int run(int argc, const char* const* argv) {
  CLI::App app{"Interview quality analytics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration")
      ->required();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the configured seed");
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "override the worker thread count");
  std::optional<std::string> out;
  app.add_option("--out", out, "override the output directory");
  std::optional<std::string> models;
  app.add_option("--models", models,
                 "comma-separated model names; restricts the configured "
                 "providers");

  auto* ingest = app.add_subcommand(
      "ingest", "parse, validate, merge and filter the input corpora");
  auto* metrics = app.add_subcommand(
      "metrics", "per-transcript entropy, length and similarity metrics");
  bool skip_semantic = false;
  metrics->add_flag("--skip-semantic", skip_semantic,
                    "skip embedding-based metrics (no provider traffic)");
  auto* compare = app.add_subcommand(
      "compare", "AI vs. human group statistics (tables 1 and 2)");
  auto* psm = app.add_subcommand(
      "psm", "propensity-score matched effect estimates (table 3)");
  auto* report =
      app.add_subcommand("report", "bundled report and density series");
  // Shared options may appear after the subcommand name.
  for (auto* sub : {ingest, metrics, compare, psm, report}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (out) {
      // Only a defaulted cache location follows the output directory.
      if (cfg.cache_dir == cfg.output_dir + "/cache") {
        cfg.cache_dir = *out + "/cache";
      }
      cfg.output_dir = *out;
    }
    if (models) select_providers(cfg, *models);
    std::filesystem::create_directories(cfg.output_dir);
    std::filesystem::create_directories(cfg.cache_dir);

    if (ingest->parsed()) return cmd_ingest(cfg);
    if (metrics->parsed()) return cmd_metrics(cfg, skip_semantic);
    if (compare->parsed()) return cmd_compare(cfg);
    if (psm->parsed()) return cmd_psm(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace ivq::cli
