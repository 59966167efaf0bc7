#include "lexcomp/tasks/split.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lexcomp/errors.h"
#include "lexcomp/rng.h"

namespace lexcomp::tasks {

SplitResult lexical_split(const std::vector<Example>& items, uint64_t seed,
                          const SplitRatios& ratios) {
  const std::array<double, 3> share{ratios.train, ratios.validation, ratios.test};
  for (double r : share) {
    if (!(r > 0.0)) throw ConfigError("split ratios must be positive");
  }
  const double ratio_total = share[0] + share[1] + share[2];

  std::map<std::string, std::size_t> sizes;
  for (const Example& e : items) {
    if (e.anchor.empty()) throw SplitError("example " + e.id + " has no anchor");
    ++sizes[e.anchor];
  }
  if (sizes.size() < 3) {
    throw SplitError("a lexical split needs at least 3 distinct anchors, got " +
                     std::to_string(sizes.size()));
  }

  std::vector<std::pair<std::string, std::size_t>> anchors(sizes.begin(), sizes.end());
  Rng rng(seed);
  rng.shuffle(anchors);
  std::stable_sort(anchors.begin(), anchors.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  const double total = static_cast<double>(items.size());
  std::array<double, 3> target{};
  for (int s = 0; s < 3; ++s) target[s] = total * share[s] / ratio_total;
  std::array<std::size_t, 3> count{};
  std::map<std::string, int> assignment;
  SplitResult result;
  for (const auto& [anchor, size] : anchors) {
    int best = 0;
    double best_fill = static_cast<double>(count[0]) / target[0];
    for (int s = 1; s < 3; ++s) {
      const double fill = static_cast<double>(count[s]) / target[s];
      if (fill < best_fill) {
        best = s;
        best_fill = fill;
      }
    }
    assignment[anchor] = best;
    count[best] += size;
    ++result.anchors[best];
  }

  for (const Example& e : items) {
    switch (assignment[e.anchor]) {
      case 0: result.train.push_back(e); break;
      case 1: result.validation.push_back(e); break;
      default: result.test.push_back(e); break;
    }
  }
  for (int s = 0; s < 3; ++s) {
    const double actual = static_cast<double>(count[s]) / total;
    if (std::abs(actual - share[s] / ratio_total) > 0.02) result.skewed = true;
  }
  return result;
}

}  // namespace lexcomp::tasks
