#ifndef LEXCOMP_MODEL_CLASSIFIER_H_
#define LEXCOMP_MODEL_CLASSIFIER_H_

#include <cstddef>
#include <vector>

#include "lexcomp/autodiff/node.h"
#include "lexcomp/rng.h"

namespace lexcomp::model {

struct ClassifierConfig {
  std::size_t input_dim = 0;
  std::size_t num_labels = 2;
  std::size_t hidden_dim = 300;
  double dropout = 0.2;
};

// o = softmax(W * relu(dropout(H x + c))). The output layer has no bias.
class ClassifierHead {
 public:
  ClassifierHead(ClassifierConfig config, Rng& rng);

  const ClassifierConfig& config() const { return config_; }

  // Distribution over the labels. `rng` supplies the dropout mask and is only
  // consulted when train is true.
  ad::Node operator()(const ad::Node& x, bool train, Rng& rng) const;

  ad::Parameter& hidden() { return hidden_; }
  ad::Parameter& hidden_bias() { return hidden_bias_; }
  ad::Parameter& output() { return output_; }
  std::vector<ad::Parameter*> parameters() { return {&hidden_, &hidden_bias_, &output_}; }

 private:
  ClassifierConfig config_;
  ad::Parameter hidden_;       // [hidden x input]
  ad::Parameter hidden_bias_;  // [hidden]
  ad::Parameter output_;       // [labels x hidden]
};

}  // namespace lexcomp::model

#endif  // LEXCOMP_MODEL_CLASSIFIER_H_
