#include "lexcomp/autodiff/adam.h"

#include <cmath>

namespace lexcomp::ad {

void Adam::step(std::span<Parameter* const> params) {
  for (Parameter* param : params) {
    Moments& m = state_[param->node().data().get()];
    Tensor& value = param->mutable_value();
    Tensor& grad = param->mutable_grad();
    if (m.first.empty()) {
      m.first.assign(value.size(), 0.0);
      m.second.assign(value.size(), 0.0);
    }
    ++m.steps;
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(m.steps));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(m.steps));
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      m.first[i] = config_.beta1 * m.first[i] + (1.0 - config_.beta1) * g;
      m.second[i] = config_.beta2 * m.second[i] + (1.0 - config_.beta2) * g * g;
      const double mhat = m.first[i] / c1;
      const double vhat = m.second[i] / c2;
      value[i] -= config_.lr * mhat / (std::sqrt(vhat) + config_.eps);
    }
    grad.fill(0.0);
  }
}

}  // namespace lexcomp::ad
