#include "lexcomp/eval/metrics.h"

#include <algorithm>

#include "lexcomp/errors.h"
#include "lexcomp/model/tagging.h"

namespace lexcomp::eval {

double accuracy(std::span<const std::string> gold, std::span<const std::string> predicted) {
  if (gold.size() != predicted.size()) {
    throw ContractError("accuracy: " + std::to_string(gold.size()) + " gold labels vs " +
                        std::to_string(predicted.size()) + " predictions");
  }
  if (gold.empty()) throw ContractError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

std::vector<TagSpan> extract_spans(std::span<const std::string> tags) {
  if (!model::is_valid_tag_sequence(tags)) throw ContractError("invalid BIO tag sequence");
  std::vector<TagSpan> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (model::is_begin_tag(tags[i])) {
      spans.push_back({i, i, tags[i].substr(2)});
    } else if (model::is_inside_tag(tags[i])) {
      spans.back().end = i;
    }
  }
  return spans;
}

SpanScore span_f1(const std::vector<std::vector<std::string>>& gold,
                  const std::vector<std::vector<std::string>>& predicted) {
  if (gold.size() != predicted.size()) {
    throw ContractError("span_f1: " + std::to_string(gold.size()) + " gold sequences vs " +
                        std::to_string(predicted.size()) + " predicted");
  }
  SpanScore s;
  for (std::size_t k = 0; k < gold.size(); ++k) {
    if (gold[k].size() != predicted[k].size()) {
      throw ContractError("span_f1: sequence " + std::to_string(k) + " differs in length");
    }
    const auto g = extract_spans(gold[k]);
    const auto p = extract_spans(predicted[k]);
    s.gold += g.size();
    s.predicted += p.size();
    // Both lists come out sorted by start, and spans in one sequence never
    // share a start.
    std::vector<TagSpan> common;
    std::set_intersection(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(common));
    s.correct += common.size();
  }
  if (s.predicted > 0) s.precision = static_cast<double>(s.correct) / s.predicted;
  if (s.gold > 0) s.recall = static_cast<double>(s.correct) / s.gold;
  if (s.precision + s.recall > 0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

}  // namespace lexcomp::eval
