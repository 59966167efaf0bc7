#ifndef LEXCOMP_EVAL_METRICS_H_
#define LEXCOMP_EVAL_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lexcomp::eval {

// Fraction of exact matches. Throws ContractError on a length mismatch or
// empty input.
double accuracy(std::span<const std::string> gold, std::span<const std::string> predicted);

// Typed span from a B-X I* run, inclusive bounds.
struct TagSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string type;

  friend auto operator<=>(const TagSpan&, const TagSpan&) = default;
};

// Maximal B-X I* runs. Throws ContractError on an invalid sequence.
std::vector<TagSpan> extract_spans(std::span<const std::string> tags);

struct SpanScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Micro-averaged over the corpus; a predicted span is correct only with the
// same bounds and type as a gold span. Empty denominators score 0.
SpanScore span_f1(const std::vector<std::vector<std::string>>& gold,
                  const std::vector<std::vector<std::string>>& predicted);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_METRICS_H_
