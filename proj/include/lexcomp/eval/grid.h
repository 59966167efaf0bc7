#ifndef LEXCOMP_EVAL_GRID_H_
#define LEXCOMP_EVAL_GRID_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexcomp/eval/train.h"

namespace lexcomp::eval {

struct GridSetting {
  model::EncoderKind encoder = model::EncoderKind::kNone;
  embeddings::LayerMode layer = embeddings::LayerMode::kTop;

  std::string name() const;  // e.g. "All/biLM"
};

// Contextual sources: {Top, All} x {None, biLM, Att}. Static sources: the
// three encodings over their single layer.
std::vector<GridSetting> default_settings(bool contextual);

struct GridConfig {
  std::size_t hidden_dim = 300;
  double dropout = 0.2;
  TrainConfig train;
  uint64_t seed = 0;  // master seed; each cell derives its own from its name
  std::size_t jobs = 1;
};

struct GridRow {
  GridSetting setting;
  uint64_t seed = 0;
  EvalReport report;
};

// Trains and evaluates one model per setting. All on a single-layer source
// is rejected before any training starts.
std::vector<GridRow> run_grid(const PreparedDataset& dataset, std::size_t embedding_dim,
                              std::size_t num_layers, const std::vector<GridSetting>& settings,
                              const GridConfig& config);

nlohmann::ordered_json grid_json(const std::vector<GridRow>& rows);
std::string grid_table(const std::vector<GridRow>& rows);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_GRID_H_
