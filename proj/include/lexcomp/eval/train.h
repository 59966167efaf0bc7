#ifndef LEXCOMP_EVAL_TRAIN_H_
#define LEXCOMP_EVAL_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lexcomp/autodiff/adam.h"
#include "lexcomp/embeddings/embed.h"
#include "lexcomp/eval/report.h"
#include "lexcomp/model/model.h"
#include "lexcomp/tasks/example.h"

namespace lexcomp::eval {

struct TrainConfig {
  std::size_t max_epochs = 500;
  std::size_t patience = 20;
  uint64_t seed = 0;
  std::size_t batch_size = 32;
  ad::AdamConfig adam;
  // Stop as soon as the validation score reaches this value.
  std::optional<double> target;

  // Throws ConfigError unless 0 < patience < max_epochs and batch_size > 0.
  void validate() const;
};

// Tracks the best validation score; epochs count from 1.
class EarlyStopping {
 public:
  EarlyStopping(std::size_t patience, std::size_t max_epochs);

  // Records the score of the next epoch; true when it beats the best so far.
  bool record(double score);
  bool should_stop() const;

  std::size_t epochs() const { return epochs_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_score() const { return best_; }

 private:
  std::size_t patience_;
  std::size_t max_epochs_;
  std::size_t epochs_ = 0;
  std::size_t best_epoch_ = 0;
  double best_ = -std::numeric_limits<double>::infinity();
};

// A dataset with every input looked up once in the frozen representation.
struct PreparedDataset {
  tasks::TaskDataset data;
  std::vector<model::EmbeddedExample> train;
  std::vector<model::EmbeddedExample> validation;
  std::vector<model::EmbeddedExample> test;
};

PreparedDataset prepare(tasks::TaskDataset dataset, const embeddings::EmbeddingSource& source);

std::vector<Prediction> predict(const model::ProbeModel& model,
                                const std::vector<tasks::Example>& examples,
                                const std::vector<model::EmbeddedExample>& inputs);

// Scores one split and fills the setting and layer weights from the model.
EvalReport evaluate(const model::ProbeModel& model, const std::vector<tasks::Example>& examples,
                    const std::vector<model::EmbeddedExample>& inputs, std::string split);

struct TrainResult {
  EvalReport report;                      // on the test split, from the best epoch
  std::vector<double> epoch_loss;         // mean train loss per epoch
  std::vector<double> validation_scores;  // per epoch
};

// Minibatch Adam on mean cross-entropy, one validation pass per epoch, early
// stopping on the headline metric, then restores the best parameters.
TrainResult train(model::ProbeModel& model, const PreparedDataset& dataset,
                  const TrainConfig& config);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_TRAIN_H_
