#ifndef LEXCOMP_AUTODIFF_GRADCHECK_H_
#define LEXCOMP_AUTODIFF_GRADCHECK_H_

#include <functional>
#include <span>
#include <string>

#include "lexcomp/autodiff/node.h"

namespace lexcomp::ad {

struct GradCheckResult {
  double max_error = 0.0;   // worst relative error over all entries
  std::string worst_entry;  // "<param>[<index>]" of the worst entry
  std::size_t entries = 0;
};

// Relative error |a - n| / max(|a|, |n|, floor). The floor keeps entries whose
// true gradient is ~0 from being judged on rounding noise alone.
double relative_error(double analytic, double numeric, double floor = 1e-3);

// Compares analytic gradients of loss_fn() (rebuilt on every call) against
// central finite differences with the given step, for every entry of every
// parameter. Parameter values are restored afterwards and grads zeroed.
GradCheckResult check_gradients(const std::function<Node()>& loss_fn,
                                std::span<Parameter* const> params,
                                double step = 1e-3);

}  // namespace lexcomp::ad

#endif  // LEXCOMP_AUTODIFF_GRADCHECK_H_
