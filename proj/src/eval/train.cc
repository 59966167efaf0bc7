#include "lexcomp/eval/train.h"

#include <numeric>

#include <spdlog/spdlog.h>

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"

namespace lexcomp::eval {

void TrainConfig::validate() const {
  if (max_epochs == 0) throw ConfigError("max_epochs must be positive");
  if (patience == 0 || patience >= max_epochs) {
    throw ConfigError("patience must be in [1, max_epochs); got " + std::to_string(patience) +
                      " with max_epochs " + std::to_string(max_epochs));
  }
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(adam.lr > 0.0)) throw ConfigError("learning rate must be positive");
}

EarlyStopping::EarlyStopping(std::size_t patience, std::size_t max_epochs)
    : patience_(patience), max_epochs_(max_epochs) {}

bool EarlyStopping::record(double score) {
  ++epochs_;
  if (score > best_) {
    best_ = score;
    best_epoch_ = epochs_;
    return true;
  }
  return false;
}

bool EarlyStopping::should_stop() const {
  return epochs_ >= max_epochs_ || epochs_ - best_epoch_ >= patience_;
}

namespace {

std::vector<model::EmbeddedExample> embed_all(const std::vector<tasks::Example>& examples,
                                              const tasks::TaskSchema& schema,
                                              const embeddings::EmbeddingSource& source) {
  std::vector<model::EmbeddedExample> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(model::embed_example(e, schema, source));
  return out;
}

}  // namespace

PreparedDataset prepare(tasks::TaskDataset dataset, const embeddings::EmbeddingSource& source) {
  PreparedDataset p;
  p.train = embed_all(dataset.train, dataset.schema, source);
  p.validation = embed_all(dataset.validation, dataset.schema, source);
  p.test = embed_all(dataset.test, dataset.schema, source);
  p.data = std::move(dataset);
  return p;
}

std::vector<Prediction> predict(const model::ProbeModel& model,
                                const std::vector<tasks::Example>& examples,
                                const std::vector<model::EmbeddedExample>& inputs) {
  if (examples.size() != inputs.size()) throw ContractError("predict: inputs do not match examples");
  std::vector<Prediction> out;
  out.reserve(examples.size());
  const auto& schema = model.schema();
  for (std::size_t i = 0; i < examples.size(); ++i) {
    Prediction p{examples[i].id, "", {}};
    if (schema.tagging) {
      p.tags = model.predict_tags(inputs[i]);
    } else {
      p.label = schema.labels[model.predict_label(inputs[i])];
    }
    out.push_back(std::move(p));
  }
  return out;
}

EvalReport evaluate(const model::ProbeModel& model, const std::vector<tasks::Example>& examples,
                    const std::vector<model::EmbeddedExample>& inputs, std::string split) {
  EvalReport r;
  r.task = model.schema().task;
  r.split = std::move(split);
  r.setting = {{"encoding", std::string(model::encoder_name(model.config().encoder))},
               {"layer", std::string(model::layer_mode_name(model.config().layer_mode))}};
  r.predictions = predict(model, examples, inputs);
  r.result = score(model.schema(), examples, r.predictions);
  if (model.has_mix()) {
    r.layer_weights = model.mix().normalized_weights();
    r.gamma = model.mix().gamma_value();
  }
  return r;
}

TrainResult train(model::ProbeModel& model, const PreparedDataset& dataset,
                  const TrainConfig& config) {
  config.validate();
  if (!(model.schema() == dataset.data.schema)) {
    throw ContractError("model schema (" + model.schema().task +
                        ") does not match the dataset schema (" + dataset.data.schema.task + ")");
  }
  if (dataset.train.empty()) throw ConfigError("empty train split");
  if (dataset.validation.empty()) throw ConfigError("empty validation split");

  Rng rng(config.seed);
  ad::Adam adam(config.adam);
  const std::vector<ad::Parameter*> params = model.parameters();
  for (ad::Parameter* p : params) p->zero_grad();

  EarlyStopping stopping(config.patience, config.max_epochs);
  std::vector<ad::Tensor> best = model.snapshot();
  TrainResult result;
  std::vector<std::size_t> order(dataset.train.size());

  while (!stopping.should_stop()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      std::vector<ad::Node> losses;
      losses.reserve(end - begin);
      for (std::size_t k = begin; k < end; ++k) {
        losses.push_back(model.loss(dataset.train[order[k]], true, rng));
      }
      ad::Node batch = ad::scale(ad::add_n(losses), 1.0 / static_cast<double>(losses.size()));
      ad::backward(batch);
      adam.step(params);
      total += batch.item() * static_cast<double>(losses.size());
    }
    result.epoch_loss.push_back(total / static_cast<double>(order.size()));

    const double val =
        score(model.schema(), dataset.data.validation,
              predict(model, dataset.data.validation, dataset.validation))
            .value;
    result.validation_scores.push_back(val);
    if (stopping.record(val)) best = model.snapshot();
    spdlog::debug("epoch {}: loss {:.6f} validation {:.4f}", stopping.epochs(),
                  result.epoch_loss.back(), val);
    if (config.target && val >= *config.target) break;
  }
  model.restore(best);

  const bool has_test = !dataset.test.empty();
  result.report = has_test ? evaluate(model, dataset.data.test, dataset.test, "test")
                           : evaluate(model, dataset.data.validation, dataset.validation,
                                      "validation");
  result.report.validation = stopping.best_score();
  result.report.epochs_run = stopping.epochs();
  result.report.best_epoch = stopping.best_epoch();
  return result;
}

}  // namespace lexcomp::eval
