#include "commands.h"

#include <filesystem>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "lexcomp/cli/cli.h"
#include "lexcomp/errors.h"
#include "lexcomp/eval/ablation.h"
#include "lexcomp/eval/baseline.h"
#include "lexcomp/eval/grid.h"
#include "lexcomp/eval/train.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/serialize.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::cli {

namespace fs = std::filesystem;

namespace {

fs::path input_file(const std::string& path, const std::string& what) {
  const fs::path p = resolve_input(path);
  if (!fs::exists(p)) throw ConfigError(what + " " + p.string() + " does not exist");
  return p;
}

fs::path dataset_dir(const std::string& path) {
  const fs::path p = input_file(path, "dataset");
  for (const char* f : {"schema.json", "train.jsonl", "validation.jsonl", "test.jsonl"}) {
    if (!fs::exists(p / f)) throw ConfigError("dataset " + p.string() + " lacks " + f);
  }
  return p;
}

void check_output_dir(const std::string& out) {
  if (!out.empty() && fs::exists(out) && !fs::is_directory(out)) {
    throw ConfigError("output " + out + " exists and is not a directory");
  }
}

void check_output_file(const std::string& out) {
  if (!out.empty() && fs::is_directory(out)) {
    throw ConfigError("output " + out + " is a directory, expected a file path");
  }
}

model::ModelConfig model_config(const ModelOptions& m) {
  model::ModelConfig c;
  c.encoder = model::parse_encoder(m.encoding);
  c.layer_mode = model::parse_layer_mode(m.layer);
  c.hidden_dim = m.hidden_dim;
  c.dropout = m.dropout;
  if (c.hidden_dim == 0) throw ConfigError("hidden-dim must be positive");
  if (c.dropout < 0.0 || c.dropout >= 1.0) throw ConfigError("dropout must be in [0, 1)");
  return c;
}

eval::TrainConfig train_config(const ModelOptions& m, uint64_t seed) {
  eval::TrainConfig c;
  c.max_epochs = m.max_epochs;
  c.patience = m.patience;
  c.batch_size = m.batch_size;
  c.adam.lr = m.lr;
  c.seed = seed;
  c.validate();
  return c;
}

void require(const std::string& value, const char* flag, std::string_view task) {
  if (value.empty()) {
    throw UsageError(std::string(flag) + " is required for task " + std::string(task));
  }
}

std::string summary(const eval::EvalReport& r) {
  std::string s = fmt::format("{} {:.3f}", r.result.metric, r.result.value);
  if (r.validation) {
    s += fmt::format(" (validation {:.3f}, best epoch {} of {})", *r.validation, r.best_epoch,
                     r.epochs_run);
  }
  return s;
}

}  // namespace

int run_build(const BuildOptions& o, uint64_t seed, std::ostream& out) {
  const tasks::TaskId task = tasks::parse_task(o.task);
  const std::string_view name = tasks::task_name(task);
  using tasks::TaskId;
  if (task == TaskId::kNcLiterality || task == TaskId::kNcRelations ||
      task == TaskId::kAnAttributes) {
    require(o.contexts, "--contexts", name);
  }
  if (task == TaskId::kNcRelations) require(o.verbs, "--verbs", name);
  if (task == TaskId::kAnAttributes) require(o.taxonomy, "--taxonomy", name);

  const fs::path source = input_file(o.source, "source");
  const fs::path contexts = o.contexts.empty() ? fs::path() : input_file(o.contexts, "contexts");
  const fs::path relations =
      o.relations.empty() ? fs::path() : input_file(o.relations, "relations");
  const fs::path verbs = o.verbs.empty() ? fs::path() : input_file(o.verbs, "verb lexicon");
  const fs::path taxonomy = o.taxonomy.empty() ? fs::path() : input_file(o.taxonomy, "taxonomy");
  check_output_dir(o.out);

  auto load_contexts = [&] {
    auto index = tasks::ContextIndex::load(contexts);
    spdlog::info("context corpus: {} sentences of 15-20 tokens", index.size());
    return index;
  };

  tasks::BuildResult result;
  switch (task) {
    case TaskId::kVpc:
      result = tasks::build_vpc(tasks::read_vpc_source(source), seed);
      break;
    case TaskId::kLvc:
      result = tasks::build_lvc(tasks::read_lvc_source(source), seed);
      break;
    case TaskId::kNcLiterality: {
      tasks::LiteralityOptions opts;
      opts.contexts_per_item = o.max_contexts;
      opts.split_key = tasks::parse_split_key(o.split_key);
      const auto rel = relations.empty() ? std::vector<tasks::CompoundRelation>{}
                                         : tasks::read_compound_relations(relations);
      result = tasks::build_nc_literality(tasks::read_literality_scores(source), rel,
                                          load_contexts(), seed, opts);
      break;
    }
    case TaskId::kNcRelations: {
      tasks::RelationsOptions opts;
      opts.max_positives = o.max_positives;
      result = tasks::build_nc_relations(tasks::read_paraphrases(source),
                                         tasks::read_verb_lexicon(verbs), load_contexts(), seed,
                                         opts);
      break;
    }
    case TaskId::kAnAttributes: {
      tasks::AttributeOptions opts;
      opts.max_negatives = o.max_negatives;
      opts.similarity_threshold = o.similarity_threshold;
      opts.balance = o.balance;
      result = tasks::build_an_attributes(tasks::read_attributes(source),
                                          tasks::Taxonomy::load(taxonomy), load_contexts(), seed,
                                          opts);
      break;
    }
    case TaskId::kPhraseType:
      result = tasks::build_phrase_type(tasks::read_phrase_type_source(source), seed);
      break;
  }
  tasks::write_build(o.out, result);
  const auto& d = result.dataset;
  out << fmt::format("{}: train {} validation {} test {}{}\n", name, d.train.size(),
                     d.validation.size(), d.test.size(),
                     result.split_skewed ? " (split skewed by dominant anchors)" : "");
  return kExitOk;
}

int run_baseline(const RunOptions& o, std::ostream& out) {
  const auto variant = eval::parse_variant(o.variant);
  const fs::path dir = dataset_dir(o.dataset);
  check_output_file(o.out);
  const tasks::TaskDataset d = tasks::read_dataset(dir);
  const eval::EvalReport r = eval::majority_baseline(variant, d.schema, d.train, d.test);
  if (!o.out.empty()) eval::write_report(o.out, r);
  out << summary(r) << "\n";
  return kExitOk;
}

int run_train(const RunOptions& o, uint64_t seed, std::ostream& out) {
  const auto mc = model_config(o.model_options);
  const auto tc = train_config(o.model_options, seed);
  const fs::path dir = dataset_dir(o.dataset);
  const fs::path emb = input_file(o.embeddings, "embeddings");
  check_output_dir(o.out);

  const auto source = embeddings::EmbeddingSource::load(emb);
  model::ProbeModel m(tasks::read_dataset(dir).schema, mc, source.dim(), source.num_layers(),
                      seed);
  const eval::PreparedDataset prepared = eval::prepare(tasks::read_dataset(dir), source);
  spdlog::info("training {} ({}/{}) on {} examples", prepared.data.schema.task,
               model::layer_mode_name(mc.layer_mode), model::encoder_name(mc.encoder),
               prepared.train.size());
  const eval::TrainResult r = eval::train(m, prepared, tc);

  fs::create_directories(o.out);
  m.save(fs::path(o.out) / "model.lckp");
  eval::write_report(fs::path(o.out) / "report.json", r.report);
  nlohmann::ordered_json history;
  history["epoch_loss"] = r.epoch_loss;
  history["validation"] = r.validation_scores;
  tasks::write_text(fs::path(o.out) / "training.json", history.dump(2) + "\n");
  out << summary(r.report) << "\n";
  return kExitOk;
}

int run_evaluate(const RunOptions& o, std::ostream& out) {
  const fs::path dir = dataset_dir(o.dataset);
  const fs::path emb = input_file(o.embeddings, "embeddings");
  const fs::path model_path = input_file(o.model, "model");
  check_output_file(o.out);
  if (o.split != "train" && o.split != "validation" && o.split != "test") {
    throw UsageError("--split must be train, validation or test");
  }

  const model::ProbeModel m = model::ProbeModel::load(model_path);
  const tasks::TaskDataset d = tasks::read_dataset(dir);
  if (!(d.schema == m.schema())) {
    throw ConfigError("model was trained for " + m.schema().task + " with a different schema than " +
                      dir.string());
  }
  const auto source = embeddings::EmbeddingSource::load(emb);
  if (source.dim() != m.embedding_dim() || source.num_layers() != m.num_layers()) {
    throw ConfigError(fmt::format("embeddings have dim {} and {} layers; the model expects {} and {}",
                                  source.dim(), source.num_layers(), m.embedding_dim(),
                                  m.num_layers()));
  }
  tasks::TaskDataset only;
  only.schema = d.schema;
  only.test = o.split == "train" ? d.train : o.split == "validation" ? d.validation : d.test;
  const eval::PreparedDataset prepared = eval::prepare(std::move(only), source);
  const eval::EvalReport r = eval::evaluate(m, prepared.data.test, prepared.test, o.split);
  if (!o.out.empty()) eval::write_report(o.out, r);
  out << summary(r) << "\n";
  return kExitOk;
}

int run_grid_command(const RunOptions& o, uint64_t seed, std::ostream& out) {
  const fs::path dir = dataset_dir(o.dataset);
  const fs::path emb = input_file(o.embeddings, "embeddings");
  check_output_dir(o.out);
  eval::GridConfig gc;
  gc.hidden_dim = o.model_options.hidden_dim;
  gc.dropout = o.model_options.dropout;
  gc.train = train_config(o.model_options, seed);
  gc.seed = seed;
  gc.jobs = std::max<std::size_t>(1, o.jobs);

  const auto source = embeddings::EmbeddingSource::load(emb);
  std::vector<embeddings::LayerMode> layers;
  for (const auto& l : o.layers) layers.push_back(model::parse_layer_mode(l));
  if (layers.empty()) {
    layers.push_back(embeddings::LayerMode::kTop);
    if (source.is_contextual()) layers.push_back(embeddings::LayerMode::kAll);
  }
  std::vector<model::EncoderKind> encoders;
  for (const auto& e : o.encodings) encoders.push_back(model::parse_encoder(e));
  if (encoders.empty()) {
    encoders = {model::EncoderKind::kNone, model::EncoderKind::kBiLm, model::EncoderKind::kAtt};
  }
  std::vector<eval::GridSetting> settings;
  for (auto l : layers) {
    for (auto e : encoders) settings.push_back({e, l});
  }
  for (const auto& s : settings) {
    if (s.layer == embeddings::LayerMode::kAll && source.num_layers() < 2) {
      throw ConfigError("layer mode All needs a multi-layer representation; " + emb.string() +
                        " has one layer");
    }
  }

  const auto prepared = eval::prepare(tasks::read_dataset(dir), source);
  const auto rows = eval::run_grid(prepared, source.dim(), source.num_layers(), settings, gc);
  const std::string table = eval::grid_table(rows);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    tasks::write_text(fs::path(o.out) / "grid.json", eval::grid_json(rows).dump(2) + "\n");
    tasks::write_text(fs::path(o.out) / "grid.txt", table);
  }
  out << table;
  return kExitOk;
}

int run_ablate(const RunOptions& o, uint64_t seed, std::ostream& out) {
  const auto mode = eval::parse_ablation(o.mode);
  const fs::path dir = dataset_dir(o.dataset);
  if (!o.emit_dataset.empty()) {
    check_output_dir(o.emit_dataset);
    const auto ablated = eval::ablate(tasks::read_dataset(dir), mode);
    tasks::write_dataset(o.emit_dataset, ablated);
    out << fmt::format("{} {}: wrote {} examples to {}\n", ablated.schema.task,
                       eval::ablation_name(mode),
                       ablated.train.size() + ablated.validation.size() + ablated.test.size(),
                       o.emit_dataset);
    return kExitOk;
  }
  if (o.embeddings.empty()) throw UsageError("ablate needs --embeddings unless --emit-dataset is given");
  const fs::path emb = input_file(o.embeddings, "embeddings");
  check_output_file(o.out);
  const auto mc = model_config(o.model_options);
  const auto tc = train_config(o.model_options, seed);
  const auto d = tasks::read_dataset(dir);
  eval::ablate(d, mode);  // reject unsuitable tasks before loading embeddings
  const auto source = embeddings::EmbeddingSource::load(emb);
  const eval::EvalReport r = eval::run_ablation(d, mode, source, mc, tc);
  if (!o.out.empty()) eval::write_report(o.out, r);
  out << eval::ablation_name(mode) << " " << summary(r) << "\n";
  return kExitOk;
}

int run_inspect(const RunOptions& o, std::ostream& out) {
  const fs::path model_path = input_file(o.model, "model");
  check_output_file(o.out);
  const auto w = eval::inspect_layer_weights(model::ProbeModel::load(model_path));
  nlohmann::ordered_json j;
  j["layers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    out << fmt::format("layer {} {:.6f}\n", i, w.weights[i]);
    j["layers"].push_back({{"layer", i}, {"weight", w.weights[i]}});
  }
  j["gamma"] = w.gamma;
  out << fmt::format("gamma {:.6f}\n", w.gamma);
  if (!o.out.empty()) tasks::write_text(o.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace lexcomp::cli
