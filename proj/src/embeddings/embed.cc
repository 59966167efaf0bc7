#include "lexcomp/embeddings/embed.h"

#include <cmath>

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"

namespace lexcomp::embeddings {

LayeredSequence embed(const EmbeddingTable& table, std::span<const std::string> tokens) {
  LayeredSequence seq;
  seq.tokens.assign(tokens.begin(), tokens.end());
  seq.num_layers = 1;
  seq.dim = table.dim();
  seq.values.assign(tokens.size() * table.dim(), 0.0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (const auto* v = table.lookup(tokens[i])) {
      std::copy(v->begin(), v->end(), seq.values.begin() + i * table.dim());
    }
  }
  return seq;
}

LayeredSequence embed(const ContextualStore& store, std::span<const std::string> tokens) {
  const ContextualRecord* rec = store.find(tokens);
  if (rec == nullptr) {
    throw MissingEmbeddingError("no contextual vectors for sentence '" +
                                sentence_id(tokens) +
                                "'; re-run the exporter over this dataset");
  }
  LayeredSequence seq;
  seq.tokens = rec->tokens;
  seq.num_layers = store.num_layers();
  seq.dim = store.dim();
  seq.values.assign(rec->values.begin(), rec->values.end());
  return seq;
}

EmbeddingSource::EmbeddingSource(std::shared_ptr<const EmbeddingTable> table)
    : table_(std::move(table)) {}

EmbeddingSource::EmbeddingSource(std::shared_ptr<const ContextualStore> store)
    : store_(std::move(store)) {}

EmbeddingSource EmbeddingSource::load(const std::filesystem::path& path) {
  if (is_lceb_file(path)) {
    return EmbeddingSource(std::make_shared<const ContextualStore>(load_contextual(path)));
  }
  return EmbeddingSource(std::make_shared<const EmbeddingTable>(load_static(path)));
}

std::size_t EmbeddingSource::dim() const {
  return store_ ? store_->dim() : table_->dim();
}

std::size_t EmbeddingSource::num_layers() const {
  return store_ ? store_->num_layers() : 1;
}

LayeredSequence EmbeddingSource::embed(std::span<const std::string> tokens) const {
  return store_ ? embeddings::embed(*store_, tokens) : embeddings::embed(*table_, tokens);
}

ScalarMix::ScalarMix(std::size_t num_layers)
    : raw_weights_("mix.raw_weights", ad::Tensor::zeros({num_layers})),
      gamma_("mix.gamma", ad::Tensor::scalar(1.0)) {}

std::vector<double> ScalarMix::normalized_weights() const {
  return ad::softmax(ad::constant(raw_weights_.value())).value().values();
}

std::vector<ad::Node> mix_layers(const LayeredSequence& seq, LayerMode mode,
                                 const ScalarMix* mix) {
  const std::size_t n = seq.length();
  const std::size_t layers = seq.num_layers;
  std::vector<ad::Node> out;
  out.reserve(n);
  if (mode == LayerMode::kTop) {
    for (std::size_t i = 0; i < n; ++i) {
      auto v = seq.vector(layers - 1, i);
      out.push_back(ad::constant(ad::Tensor::vector({v.begin(), v.end()})));
    }
    return out;
  }
  if (mix == nullptr || mix->num_layers() != layers) {
    throw ContractError("mix_layers(All): scalar mix over " +
                        std::to_string(mix ? mix->num_layers() : 0) +
                        " layers cannot combine a " + std::to_string(layers) +
                        "-layer sequence");
  }
  const ad::Node weights = ad::softmax(mix->raw_weights().node());
  for (std::size_t i = 0; i < n; ++i) {
    // Columns are layers: [d x L] * softmax(raw) -> [d].
    std::vector<double> cols(seq.dim * layers);
    for (std::size_t l = 0; l < layers; ++l) {
      auto v = seq.vector(l, i);
      for (std::size_t j = 0; j < seq.dim; ++j) cols[j * layers + l] = v[j];
    }
    const ad::Node stacked = ad::constant(ad::Tensor::matrix(seq.dim, layers, std::move(cols)));
    out.push_back(ad::scale(ad::matvec(stacked, weights), mix->gamma().node()));
  }
  return out;
}

}  // namespace lexcomp::embeddings
