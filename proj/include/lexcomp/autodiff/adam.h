#ifndef LEXCOMP_AUTODIFF_ADAM_H_
#define LEXCOMP_AUTODIFF_ADAM_H_

#include <span>
#include <unordered_map>
#include <vector>

#include "lexcomp/autodiff/node.h"

namespace lexcomp::ad {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moment state is keyed by parameter identity, so
// the same optimizer can be stepped with any subset of its parameters.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  // Updates every parameter in place from its accumulated gradient, then
  // zeroes the gradients.
  void step(std::span<Parameter* const> params);

  const AdamConfig& config() const { return config_; }

 private:
  struct Moments {
    std::vector<double> first;
    std::vector<double> second;
    long steps = 0;
  };

  AdamConfig config_;
  std::unordered_map<const detail::NodeData*, Moments> state_;
};

}  // namespace lexcomp::ad

#endif  // LEXCOMP_AUTODIFF_ADAM_H_
