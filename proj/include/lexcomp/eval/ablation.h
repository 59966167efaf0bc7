#ifndef LEXCOMP_EVAL_ABLATION_H_
#define LEXCOMP_EVAL_ABLATION_H_

#include <cstdint>
#include <string_view>

#include "lexcomp/eval/train.h"

namespace lexcomp::eval {

enum class AblationMode { kFull, kMinusPhrase, kMinusContext, kMinusBoth };

// "full", "minus-phrase", "minus-context", "minus-both".
std::string_view ablation_name(AblationMode mode);
AblationMode parse_ablation(std::string_view name);

inline constexpr std::string_view kMaskToken = "something";

// MinusPhrase: the span becomes the single mask token. MinusContext: the
// sentence becomes the phrase itself. MinusBoth: no sentence at all; the
// schema drops its span endpoints so only the extra input is classified.
// Labels, ids and anchors are unchanged. Throws ConfigError for a task
// without both a span and an extra input.
tasks::Example ablate_example(const tasks::Example& example, AblationMode mode);
tasks::TaskDataset ablate(const tasks::TaskDataset& dataset, AblationMode mode);

EvalReport run_ablation(const tasks::TaskDataset& dataset, AblationMode mode,
                        const embeddings::EmbeddingSource& source,
                        const model::ModelConfig& model_config, const TrainConfig& train_config);

// Post-softmax layer weights, in layer order, and gamma of a model trained
// with all layers. Throws ConfigError for a top-layer model.
struct LayerWeights {
  std::vector<double> weights;
  double gamma = 1.0;
};
LayerWeights inspect_layer_weights(const model::ProbeModel& model);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_ABLATION_H_
