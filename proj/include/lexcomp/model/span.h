#ifndef LEXCOMP_MODEL_SPAN_H_
#define LEXCOMP_MODEL_SPAN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lexcomp/autodiff/node.h"

namespace lexcomp::model {

// Inclusive, 0-based token range.
struct SpanRef {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  friend bool operator==(const SpanRef&, const SpanRef&) = default;
};

// Per-example span representation: [u_start ; u_end] with u_end dropped for
// single-token spans, then [extra_first ; extra_last] with extra_last dropped
// for single-token extras. Throws IndexError for a span outside u and
// ContractError for an empty extra.
ad::Node span_vector(std::span<const ad::Node> u, const SpanRef& span,
                     std::optional<std::span<const ad::Node>> extra = std::nullopt);

// Fixed-width layout chosen from the task schema: span_arity endpoints of the
// span (0, 1 or 2) and extra_arity endpoints of the extra sequence. With
// arity 2 a single-token sequence contributes the same vector twice, so every
// example of a task has the same classifier input width.
struct SpanLayout {
  std::size_t span_arity = 2;
  std::size_t extra_arity = 0;
};

ad::Node span_vector(std::span<const ad::Node> u, const std::optional<SpanRef>& span,
                     std::span<const ad::Node> extra, const SpanLayout& layout);

}  // namespace lexcomp::model

#endif  // LEXCOMP_MODEL_SPAN_H_
