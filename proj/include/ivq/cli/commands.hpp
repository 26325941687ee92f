#pragma once

#include "ivq/cli/config.hpp"

namespace ivq::cli {

/// Each command writes its artifacts under cfg.output_dir and returns a
/// process exit status (nonzero iff an error-class diagnostic was emitted).
int cmd_ingest(const RunConfig& cfg);
int cmd_metrics(const RunConfig& cfg, bool skip_semantic);
int cmd_compare(const RunConfig& cfg);
int cmd_psm(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

/// CLI entry point shared by the binary and the tests.
int run(int argc, const char* const* argv);

}  // namespace ivq::cli
