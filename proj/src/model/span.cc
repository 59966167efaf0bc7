#include "lexcomp/model/span.h"

#include <string>

#include "lexcomp/autodiff/ops.h"
#include "lexcomp/errors.h"

namespace lexcomp::model {
namespace {

void check_span(std::span<const ad::Node> u, const SpanRef& span) {
  if (span.start > span.end || span.end >= u.size()) {
    throw IndexError("span (" + std::to_string(span.start) + ", " +
                     std::to_string(span.end) + ") outside a sequence of " +
                     std::to_string(u.size()) + " tokens");
  }
}

}  // namespace

ad::Node span_vector(std::span<const ad::Node> u, const SpanRef& span,
                     std::optional<std::span<const ad::Node>> extra) {
  check_span(u, span);
  std::vector<ad::Node> parts{u[span.start]};
  if (span.end > span.start) parts.push_back(u[span.end]);
  if (extra) {
    if (extra->empty()) throw ContractError("span_vector: extra input is empty");
    parts.push_back(extra->front());
    if (extra->size() > 1) parts.push_back(extra->back());
  }
  return ad::concat(parts);
}

ad::Node span_vector(std::span<const ad::Node> u, const std::optional<SpanRef>& span,
                     std::span<const ad::Node> extra, const SpanLayout& layout) {
  std::vector<ad::Node> parts;
  if (layout.span_arity > 0) {
    if (!span) throw ContractError("span_vector: task layout needs a span");
    check_span(u, *span);
    parts.push_back(u[span->start]);
    if (layout.span_arity > 1) parts.push_back(u[span->end]);
  }
  if (layout.extra_arity > 0) {
    if (extra.empty()) throw ContractError("span_vector: task layout needs an extra input");
    parts.push_back(extra.front());
    if (layout.extra_arity > 1) parts.push_back(extra.back());
  }
  if (parts.empty()) throw ContractError("span_vector: layout selects no vectors");
  return ad::concat(parts);
}

}  // namespace lexcomp::model
