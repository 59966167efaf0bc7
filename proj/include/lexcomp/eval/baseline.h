#ifndef LEXCOMP_EVAL_BASELINE_H_
#define LEXCOMP_EVAL_BASELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "lexcomp/eval/report.h"
#include "lexcomp/tasks/example.h"

namespace lexcomp::eval {

enum class MajorityVariant { kAll, kFirst, kLast };

std::string_view variant_name(MajorityVariant v);  // "all", "first", "last"
MajorityVariant parse_variant(std::string_view name);

// Most frequent label, ties to the lexicographically smallest. Throws
// ContractError on empty input.
std::string mode_label(const std::vector<std::string>& labels);

// All: the train mode label for every test item. First/Last: the mode among
// train items whose span starts/ends with the same lowercased token, else the
// global mode. For the tagging task only All applies and predicts the most
// frequent tag at every position (I never qualifies).
EvalReport majority_baseline(MajorityVariant variant, const tasks::TaskSchema& schema,
                             const std::vector<tasks::Example>& train,
                             const std::vector<tasks::Example>& test);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_BASELINE_H_
