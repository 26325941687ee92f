#include "ivq/cli/config.hpp"

#include <set>

#include "ivq/error.hpp"
#include "ivq/text_io.hpp"

namespace ivq::cli {

using json = nlohmann::ordered_json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown config key '" + key + "' in " + where);
    }
  }
}

semantic::EmbeddingProviderSpec provider_from_json(const json& j,
                                                   std::size_t index) {
  const std::string where = "embedding.providers[" + std::to_string(index) + "]";
  reject_unknown(j, {"kind", "endpoint", "path", "model_name", "dimension",
                     "batch_size", "max_retries"}, where);
  semantic::EmbeddingProviderSpec p;
  const std::string kind = j.value("kind", std::string("precomputed"));
  if (kind == "remote") {
    p.kind = semantic::ProviderKind::RemoteService;
  } else if (kind == "precomputed") {
    p.kind = semantic::ProviderKind::PrecomputedFile;
  } else {
    throw ConfigError(where + ": unknown kind '" + kind + "'");
  }
  p.endpoint = j.value("endpoint", std::string());
  p.path = j.value("path", std::string());
  if (!j.contains("model_name")) {
    throw ConfigError(where + ": model_name is required");
  }
  p.model_name = j.at("model_name").get<std::string>();
  p.dimension = j.value("dimension", std::size_t{768});
  p.batch_size = j.value("batch_size", std::size_t{64});
  p.max_retries = j.value("max_retries", 3u);
  if (p.kind == semantic::ProviderKind::RemoteService && p.endpoint.empty()) {
    throw ConfigError(where + ": remote provider needs an endpoint");
  }
  if (p.kind == semantic::ProviderKind::PrecomputedFile && p.path.empty()) {
    throw ConfigError(where + ": precomputed provider needs a path");
  }
  return p;
}

InputSpec input_from_json(const json& j, std::size_t index) {
  const std::string where = "inputs[" + std::to_string(index) + "]";
  reject_unknown(j, {"path", "format", "source", "rolemap", "language"}, where);
  InputSpec in;
  if (!j.contains("path")) throw ConfigError(where + ": path is required");
  in.path = j.at("path").get<std::string>();
  in.format = corpus::format_from_string(
      j.value("format", std::string("canonical")));
  if (j.contains("source")) {
    in.source = corpus::source_from_string(j.at("source").get<std::string>());
  }
  in.rolemap = j.value("rolemap", std::string());
  in.language = j.value("language", std::string("en"));
  if (in.format == corpus::Format::MediaSum) {
    if (!in.source) {
      throw ConfigError(where + ": mediasum input needs an explicit source");
    }
    if (in.rolemap.empty()) {
      throw ConfigError(where + ": mediasum input needs a rolemap");
    }
  }
  return in;
}

}  // namespace

RunConfig config_from_json(const json& j) {
  reject_unknown(j, {"schema_version", "seed", "threads", "output_dir",
                     "inputs", "filter", "segmentation", "tokenizer",
                     "lmin_mode", "embedding", "compare", "psm", "report"},
                 "config root");
  RunConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);

  if (j.contains("inputs")) {
    std::size_t i = 0;
    for (const auto& in : j.at("inputs")) {
      cfg.inputs.push_back(input_from_json(in, i++));
    }
  }
  if (j.contains("filter")) {
    const auto& f = j.at("filter");
    reject_unknown(f, {"min_chars", "language"}, "filter");
    cfg.filter.min_chars = f.value("min_chars", cfg.filter.min_chars);
    cfg.filter.language = f.value("language", cfg.filter.language);
  }
  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    reject_unknown(s, {"delimiters"}, "segmentation");
    cfg.delimiters = s.value("delimiters", cfg.delimiters);
  }
  if (j.contains("tokenizer")) {
    const auto& t = j.at("tokenizer");
    reject_unknown(t, {"vocab", "name"}, "tokenizer");
    cfg.vocab_path = t.value("vocab", cfg.vocab_path);
    cfg.tokenizer_name = t.value("name", cfg.tokenizer_name);
  }
  const std::string lmin = j.value("lmin_mode", std::string("per_scope"));
  if (lmin == "per_scope") {
    cfg.lmin_mode = lexical::LMinMode::PerScope;
  } else if (lmin == "global") {
    cfg.lmin_mode = lexical::LMinMode::Global;
  } else {
    throw ConfigError("lmin_mode must be 'per_scope' or 'global'");
  }
  if (j.contains("embedding")) {
    const auto& e = j.at("embedding");
    reject_unknown(e, {"cache_dir", "providers"}, "embedding");
    cfg.cache_dir = e.value("cache_dir", std::string());
    if (e.contains("providers")) {
      std::size_t i = 0;
      for (const auto& p : e.at("providers")) {
        cfg.providers.push_back(provider_from_json(p, i++));
      }
    }
  }
  if (j.contains("compare")) {
    const auto& c = j.at("compare");
    reject_unknown(c, {"bootstrap_replicates"}, "compare");
    cfg.bootstrap_replicates =
        c.value("bootstrap_replicates", cfg.bootstrap_replicates);
  }
  if (j.contains("psm")) {
    const auto& p = j.at("psm");
    reject_unknown(p, {"bandwidth", "caliper_multiplier", "transformed_ols"},
                   "psm");
    cfg.psm_bandwidth = p.value("bandwidth", cfg.psm_bandwidth);
    cfg.psm_caliper_multiplier =
        p.value("caliper_multiplier", cfg.psm_caliper_multiplier);
    cfg.psm_transformed_ols = p.value("transformed_ols", cfg.psm_transformed_ols);
  }
  if (j.contains("report")) {
    const auto& r = j.at("report");
    reject_unknown(r, {"histogram_bins"}, "report");
    cfg.histogram_bins = r.value("histogram_bins", cfg.histogram_bins);
    if (cfg.histogram_bins == 0) {
      throw ConfigError("report.histogram_bins must be positive");
    }
  }
  if (cfg.cache_dir.empty()) cfg.cache_dir = cfg.output_dir + "/cache";
  return cfg;
}

RunConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json resolved_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["output_dir"] = cfg.output_dir;
  j["inputs"] = json::array();
  for (const auto& in : cfg.inputs) {
    json ji;
    ji["path"] = in.path;
    ji["format"] = corpus::to_string(in.format);
    if (in.source) ji["source"] = corpus::to_string(*in.source);
    if (!in.rolemap.empty()) ji["rolemap"] = in.rolemap;
    ji["language"] = in.language;
    j["inputs"].push_back(std::move(ji));
  }
  j["filter"] = {{"min_chars", cfg.filter.min_chars},
                 {"language", cfg.filter.language}};
  j["segmentation"] = {{"delimiters", cfg.delimiters}};
  j["tokenizer"] = {{"vocab", cfg.vocab_path}, {"name", cfg.tokenizer_name}};
  j["lmin_mode"] =
      cfg.lmin_mode == lexical::LMinMode::PerScope ? "per_scope" : "global";
  json providers = json::array();
  for (const auto& p : cfg.providers) {
    json jp;
    jp["kind"] = p.kind == semantic::ProviderKind::RemoteService ? "remote"
                                                                 : "precomputed";
    if (!p.endpoint.empty()) jp["endpoint"] = p.endpoint;
    if (!p.path.empty()) jp["path"] = p.path;
    jp["model_name"] = p.model_name;
    jp["dimension"] = p.dimension;
    jp["batch_size"] = p.batch_size;
    jp["max_retries"] = p.max_retries;
    providers.push_back(std::move(jp));
  }
  j["embedding"] = {{"cache_dir", cfg.cache_dir},
                    {"providers", std::move(providers)}};
  j["compare"] = {{"bootstrap_replicates", cfg.bootstrap_replicates}};
  j["psm"] = {{"bandwidth", cfg.psm_bandwidth},
              {"caliper_multiplier", cfg.psm_caliper_multiplier},
              {"transformed_ols", cfg.psm_transformed_ols}};
  j["report"] = {{"histogram_bins", cfg.histogram_bins}};
  return j;
}

void select_providers(RunConfig& cfg, const std::string& model_list) {
  std::vector<std::string> wanted;
  std::string current;
  for (char c : model_list) {
    if (c == ',') {
      if (!current.empty()) wanted.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) wanted.push_back(current);
  if (wanted.empty()) throw ConfigError("--models given but empty");

  std::vector<semantic::EmbeddingProviderSpec> selected;
  for (const auto& name : wanted) {
    bool found = false;
    for (const auto& p : cfg.providers) {
      if (p.model_name == name) {
        selected.push_back(p);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError("--models: no configured provider named '" + name + "'");
    }
  }
  cfg.providers = std::move(selected);
}

}  // namespace ivq::cli
