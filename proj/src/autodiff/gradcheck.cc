#include "lexcomp/autodiff/gradcheck.h"

#include <algorithm>
#include <cmath>

namespace lexcomp::ad {

double relative_error(double analytic, double numeric, double floor) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

GradCheckResult check_gradients(const std::function<Node()>& loss_fn,
                                std::span<Parameter* const> params,
                                double step) {
  for (Parameter* p : params) p->zero_grad();
  backward(loss_fn());

  GradCheckResult result;
  for (Parameter* p : params) {
    const Tensor analytic = p->grad();
    Tensor& value = p->mutable_value();
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double saved = value[i];
      value[i] = saved + step;
      const double up = loss_fn().item();
      value[i] = saved - step;
      const double down = loss_fn().item();
      value[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double err = relative_error(analytic[i], numeric);
      ++result.entries;
      if (result.entries == 1 || err > result.max_error) {
        result.max_error = err;
        result.worst_entry = p->name() + "[" + std::to_string(i) + "]";
      }
    }
    p->zero_grad();
  }
  return result;
}

}  // namespace lexcomp::ad
