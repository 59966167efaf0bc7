#include "lexcomp/eval/grid.h"

#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "lexcomp/errors.h"

namespace lexcomp::eval {

std::string GridSetting::name() const {
  return std::string(model::layer_mode_name(layer)) + "/" +
         std::string(model::encoder_name(encoder));
}

std::vector<GridSetting> default_settings(bool contextual) {
  using embeddings::LayerMode;
  using model::EncoderKind;
  std::vector<GridSetting> out;
  std::vector<LayerMode> layers{LayerMode::kTop};
  if (contextual) layers.push_back(LayerMode::kAll);
  for (LayerMode l : layers) {
    for (EncoderKind e : {EncoderKind::kNone, EncoderKind::kBiLm, EncoderKind::kAtt}) {
      out.push_back({e, l});
    }
  }
  return out;
}

std::vector<GridRow> run_grid(const PreparedDataset& dataset, std::size_t embedding_dim,
                              std::size_t num_layers, const std::vector<GridSetting>& settings,
                              const GridConfig& config) {
  config.train.validate();
  for (const GridSetting& s : settings) {
    if (s.layer == embeddings::LayerMode::kAll && num_layers < 2) {
      throw ConfigError("setting " + s.name() + " needs a representation with several layers; "
                        "this one has " + std::to_string(num_layers));
    }
  }

  std::vector<GridRow> rows(settings.size());
  std::vector<std::exception_ptr> errors(settings.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < settings.size(); i = next++) {
      try {
        const GridSetting& s = settings[i];
        const uint64_t seed = Rng::derive(config.seed, s.name());
        model::ModelConfig mc{s.encoder, s.layer, config.hidden_dim, config.dropout};
        model::ProbeModel m(dataset.data.schema, mc, embedding_dim, num_layers, seed);
        TrainConfig tc = config.train;
        tc.seed = seed;
        spdlog::info("grid: training {}", s.name());
        TrainResult r = train(m, dataset, tc);
        r.report.setting["seed"] = std::to_string(seed);
        rows[i] = GridRow{s, seed, std::move(r.report)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, settings.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

nlohmann::ordered_json grid_json(const std::vector<GridRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const GridRow& r : rows) {
    nlohmann::ordered_json j;
    j["layer"] = std::string(model::layer_mode_name(r.setting.layer));
    j["encoding"] = std::string(model::encoder_name(r.setting.encoder));
    j["seed"] = r.seed;
    j["report"] = report_json(r.report);
    out.push_back(std::move(j));
  }
  return out;
}

std::string grid_table(const std::vector<GridRow>& rows) {
  const std::string metric = rows.empty() ? "score" : rows.front().report.result.metric;
  std::ostringstream out;
  out << fmt::format("{:<6} {:<9} {:>10} {:>10} {:>6} {:>7}\n", "Layer", "Encoding", metric,
                     "val", "best", "epochs");
  for (const GridRow& r : rows) {
    out << fmt::format("{:<6} {:<9} {:>10.1f} {:>10.1f} {:>6} {:>7}\n",
                       model::layer_mode_name(r.setting.layer),
                       model::encoder_name(r.setting.encoder), 100.0 * r.report.result.value,
                       100.0 * r.report.validation.value_or(0.0), r.report.best_epoch,
                       r.report.epochs_run);
  }
  return out.str();
}

}  // namespace lexcomp::eval
