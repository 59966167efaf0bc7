#ifndef LEXCOMP_EMBEDDINGS_EMBED_H_
#define LEXCOMP_EMBEDDINGS_EMBED_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lexcomp/autodiff/node.h"
#include "lexcomp/embeddings/contextual_store.h"
#include "lexcomp/embeddings/static_table.h"

namespace lexcomp::embeddings {

// Per-token, per-layer vectors for one token sequence.
struct LayeredSequence {
  std::vector<std::string> tokens;
  std::size_t num_layers = 1;
  std::size_t dim = 0;
  // num_layers x n x dim, layer-major.
  std::vector<double> values;

  std::size_t length() const { return tokens.size(); }
  std::span<const double> vector(std::size_t layer, std::size_t token) const {
    return std::span<const double>(values).subspan((layer * tokens.size() + token) * dim, dim);
  }
};

// Static path: per-token lookup with L = 1; out-of-vocabulary tokens map to
// the zero vector.
LayeredSequence embed(const EmbeddingTable& table, std::span<const std::string> tokens);

// Contextual path: returns the stored block for exactly these tokens. Throws
// MissingEmbeddingError when the sentence is not in the store.
LayeredSequence embed(const ContextualStore& store, std::span<const std::string> tokens);

// A frozen representation of either kind.
class EmbeddingSource {
 public:
  explicit EmbeddingSource(std::shared_ptr<const EmbeddingTable> table);
  explicit EmbeddingSource(std::shared_ptr<const ContextualStore> store);

  // Detects the format from the file's magic bytes.
  static EmbeddingSource load(const std::filesystem::path& path);

  bool is_contextual() const { return store_ != nullptr; }
  std::size_t dim() const;
  std::size_t num_layers() const;

  LayeredSequence embed(std::span<const std::string> tokens) const;

 private:
  std::shared_ptr<const EmbeddingTable> table_;
  std::shared_ptr<const ContextualStore> store_;
};

enum class LayerMode { kTop, kAll };

// Learned softmax-normalized layer weights plus a scale gamma.
class ScalarMix {
 public:
  explicit ScalarMix(std::size_t num_layers);

  std::size_t num_layers() const { return raw_weights_.value().size(); }
  ad::Parameter& raw_weights() { return raw_weights_; }
  ad::Parameter& gamma() { return gamma_; }
  const ad::Parameter& raw_weights() const { return raw_weights_; }
  const ad::Parameter& gamma() const { return gamma_; }

  std::vector<double> normalized_weights() const;
  double gamma_value() const { return gamma_.value()[0]; }

 private:
  ad::Parameter raw_weights_;
  ad::Parameter gamma_;
};

// Collapses layers to one vector per token. kTop takes the last layer as
// constants; kAll computes gamma * sum_l softmax(raw)_l * layer_l so the mix
// trains with the task. kAll requires a mix with matching layer count.
std::vector<ad::Node> mix_layers(const LayeredSequence& seq, LayerMode mode,
                                 const ScalarMix* mix);

}  // namespace lexcomp::embeddings

#endif  // LEXCOMP_EMBEDDINGS_EMBED_H_
