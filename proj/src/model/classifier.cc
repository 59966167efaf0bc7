#include "lexcomp/model/classifier.h"

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"
#include "lexcomp/model/encoder.h"

namespace lexcomp::model {

ClassifierHead::ClassifierHead(ClassifierConfig config, Rng& rng)
    : config_(config),
      hidden_("classifier.hidden",
              xavier_uniform(config.hidden_dim, config.input_dim, rng)),
      hidden_bias_("classifier.hidden_bias", ad::Tensor::zeros({config.hidden_dim})),
      output_("classifier.output",
              xavier_uniform(config.num_labels, config.hidden_dim, rng)) {
  if (config.num_labels < 2) throw ConfigError("classifier needs at least two labels");
}

ad::Node ClassifierHead::operator()(const ad::Node& x, bool train, Rng& rng) const {
  if (x.value().rank() != 1 || x.size() != config_.input_dim) {
    throw ContractError("classifier expects a vector of " +
                        std::to_string(config_.input_dim) + " values, got shape " +
                        ad::shape_string(x.shape()));
  }
  ad::Node h = ad::add(ad::matvec(hidden_.node(), x), hidden_bias_.node());
  h = ad::relu(ad::dropout(h, config_.dropout, rng, train));
  return ad::softmax(ad::matvec(output_.node(), h));
}

}  // namespace lexcomp::model
