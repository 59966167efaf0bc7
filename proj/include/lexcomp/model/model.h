#ifndef LEXCOMP_MODEL_MODEL_H_
#define LEXCOMP_MODEL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexcomp/autodiff/node.h"
#include "lexcomp/embeddings/embed.h"
#include "lexcomp/model/classifier.h"
#include "lexcomp/model/encoder.h"
#include "lexcomp/model/span.h"
#include "lexcomp/rng.h"
#include "lexcomp/tasks/example.h"

namespace lexcomp::model {

struct ModelConfig {
  EncoderKind encoder = EncoderKind::kNone;
  embeddings::LayerMode layer_mode = embeddings::LayerMode::kTop;
  std::size_t hidden_dim = 300;
  double dropout = 0.2;
};

std::string_view layer_mode_name(embeddings::LayerMode mode);  // "Top", "All"
embeddings::LayerMode parse_layer_mode(std::string_view name);

// An example with its frozen representations looked up once.
struct EmbeddedExample {
  embeddings::LayeredSequence sentence;             // empty when the task sees no sentence
  std::optional<embeddings::LayeredSequence> extra;
  std::optional<SpanRef> span;
  std::size_t gold = 0;                             // classification
  std::vector<std::size_t> gold_tags;               // tagging
};

// Looks up the sentence (unless the schema has no span) and the extra input,
// and resolves gold labels against the schema.
EmbeddedExample embed_example(const tasks::Example& example, const tasks::TaskSchema& schema,
                              const embeddings::EmbeddingSource& source);

// Embed -> mix layers -> encode -> span vector -> classifier, or per-token
// classifier for the tagging task.
class ProbeModel {
 public:
  ProbeModel(tasks::TaskSchema schema, ModelConfig config, std::size_t embedding_dim,
             std::size_t num_layers, uint64_t seed);

  const tasks::TaskSchema& schema() const { return schema_; }
  const ModelConfig& config() const { return config_; }
  std::size_t embedding_dim() const { return embedding_dim_; }
  std::size_t num_layers() const { return num_layers_; }
  uint64_t seed() const { return seed_; }
  std::size_t classifier_input_dim() const { return head_->config().input_dim; }

  // Classifier input x of a classification example.
  ad::Node features(const EmbeddedExample& example) const;

  // Label distribution (classification) or one distribution per token
  // (tagging). rng drives dropout and is only read when train is true.
  ad::Node classify(const EmbeddedExample& example, bool train, Rng& rng) const;
  std::vector<ad::Node> tag_distributions(const EmbeddedExample& example, bool train,
                                          Rng& rng) const;

  // Cross-entropy of the gold label, or the mean over tokens for tagging.
  ad::Node loss(const EmbeddedExample& example, bool train, Rng& rng) const;

  std::size_t predict_label(const EmbeddedExample& example) const;
  std::vector<std::string> predict_tags(const EmbeddedExample& example) const;

  std::vector<ad::Parameter*> parameters();
  // Copies of all parameter values, in parameters() order.
  std::vector<ad::Tensor> snapshot() const;
  void restore(const std::vector<ad::Tensor>& values);

  ClassifierHead& head() { return *head_; }

  bool has_mix() const { return mix_ != nullptr; }
  const embeddings::ScalarMix& mix() const;

  void save(const std::filesystem::path& path) const;
  static ProbeModel load(const std::filesystem::path& path);

 private:
  std::vector<ad::Node> encode(const embeddings::LayeredSequence& seq) const;

  tasks::TaskSchema schema_;
  ModelConfig config_;
  std::size_t embedding_dim_;
  std::size_t num_layers_;
  uint64_t seed_;
  std::unique_ptr<embeddings::ScalarMix> mix_;
  std::unique_ptr<Encoder> encoder_;
  std::unique_ptr<ClassifierHead> head_;
};

}  // namespace lexcomp::model

#endif  // LEXCOMP_MODEL_MODEL_H_
