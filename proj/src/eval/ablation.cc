#include "lexcomp/eval/ablation.h"

#include "lexcomp/errors.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::eval {

std::string_view ablation_name(AblationMode mode) {
  switch (mode) {
    case AblationMode::kFull: return "full";
    case AblationMode::kMinusPhrase: return "minus-phrase";
    case AblationMode::kMinusContext: return "minus-context";
    case AblationMode::kMinusBoth: return "minus-both";
  }
  return "?";
}

AblationMode parse_ablation(std::string_view name) {
  const std::string n = tasks::lowercase(std::string(name));
  for (AblationMode m : {AblationMode::kFull, AblationMode::kMinusPhrase,
                         AblationMode::kMinusContext, AblationMode::kMinusBoth}) {
    if (n == ablation_name(m)) return m;
  }
  throw ConfigError("unknown ablation mode '" + std::string(name) +
                    "' (expected full, minus-phrase, minus-context or minus-both)");
}

tasks::Example ablate_example(const tasks::Example& example, AblationMode mode) {
  if (!example.span || !example.extra) {
    throw ConfigError("ablation needs examples with a phrase span and an extra input; " +
                      example.id + " lacks one");
  }
  const model::SpanRef span = *example.span;
  if (span.end >= example.tokens.size() || span.start > span.end) {
    throw IndexError("span of example " + example.id + " outside its tokens");
  }
  tasks::Example out = example;
  const auto first = example.tokens.begin() + static_cast<std::ptrdiff_t>(span.start);
  const auto last = example.tokens.begin() + static_cast<std::ptrdiff_t>(span.end) + 1;
  switch (mode) {
    case AblationMode::kFull:
      break;
    case AblationMode::kMinusPhrase:
      out.tokens.assign(example.tokens.begin(), first);
      out.tokens.emplace_back(kMaskToken);
      out.tokens.insert(out.tokens.end(), last, example.tokens.end());
      out.span = model::SpanRef{span.start, span.start};
      break;
    case AblationMode::kMinusContext:
      out.tokens.assign(first, last);
      out.span = model::SpanRef{0, out.tokens.size() - 1};
      break;
    case AblationMode::kMinusBoth:
      out.tokens.clear();
      out.span.reset();
      break;
  }
  return out;
}

tasks::TaskDataset ablate(const tasks::TaskDataset& dataset, AblationMode mode) {
  const auto& schema = dataset.schema;
  if (schema.tagging || schema.span_arity == 0 || schema.extra_arity == 0) {
    throw ConfigError("task " + schema.task +
                      " has no phrase-plus-extra input; ablations apply to nc-relations and "
                      "an-attributes style tasks");
  }
  tasks::TaskDataset out;
  out.schema = schema;
  if (mode == AblationMode::kMinusBoth) out.schema.span_arity = 0;
  auto apply = [&](const std::vector<tasks::Example>& in, std::vector<tasks::Example>& dst) {
    dst.reserve(in.size());
    for (const auto& e : in) dst.push_back(ablate_example(e, mode));
  };
  apply(dataset.train, out.train);
  apply(dataset.validation, out.validation);
  apply(dataset.test, out.test);
  return out;
}

EvalReport run_ablation(const tasks::TaskDataset& dataset, AblationMode mode,
                        const embeddings::EmbeddingSource& source,
                        const model::ModelConfig& model_config, const TrainConfig& train_config) {
  PreparedDataset prepared = prepare(ablate(dataset, mode), source);
  model::ProbeModel m(prepared.data.schema, model_config, source.dim(), source.num_layers(),
                      train_config.seed);
  EvalReport report = train(m, prepared, train_config).report;
  report.setting["ablation"] = std::string(ablation_name(mode));
  return report;
}

LayerWeights inspect_layer_weights(const model::ProbeModel& model) {
  if (!model.has_mix()) {
    throw ConfigError("layer weights exist only for models trained with layer mode All");
  }
  return {model.mix().normalized_weights(), model.mix().gamma_value()};
}

}  // namespace lexcomp::eval
