#ifndef LEXCOMP_TASKS_SPLIT_H_
#define LEXCOMP_TASKS_SPLIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lexcomp/tasks/example.h"

namespace lexcomp::tasks {

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct SplitResult {
  std::vector<Example> train;
  std::vector<Example> validation;
  std::vector<Example> test;
  std::array<std::size_t, 3> anchors{};  // distinct anchors per split
  // True when some split's share of examples is more than two percentage
  // points from its ratio.
  bool skewed = false;
};

// Lexically constrained split: all examples of an anchor land in one split.
// Anchors are shuffled with the seed, stably ordered by size (largest first)
// and each assigned to the split with the lowest count/target; ties go to the
// earlier split. Examples keep their input order within a split. Throws
// SplitError for fewer than three distinct anchors.
SplitResult lexical_split(const std::vector<Example>& items, uint64_t seed,
                          const SplitRatios& ratios = {});

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_SPLIT_H_
