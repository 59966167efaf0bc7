#ifndef LEXCOMP_TASKS_EXAMPLE_H_
#define LEXCOMP_TASKS_EXAMPLE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexcomp/model/span.h"

namespace lexcomp::tasks {

using model::SpanRef;

enum class TaskId { kVpc, kLvc, kNcLiterality, kNcRelations, kAnAttributes, kPhraseType };

// "vpc", "lvc", "nc-literality", "nc-relations", "an-attributes", "phrase-type".
std::string_view task_name(TaskId id);
TaskId parse_task(std::string_view name);  // throws ConfigError

// One task instance. Classification tasks carry span/label; the tagging task
// carries one tag per token instead.
struct Example {
  std::string id;
  std::string task;
  std::vector<std::string> tokens;
  std::optional<SpanRef> span;
  std::optional<std::vector<std::string>> extra;
  std::string label;
  std::vector<std::string> tags;
  std::string anchor;

  friend bool operator==(const Example&, const Example&) = default;
};

struct TaskSchema {
  std::string task;
  std::vector<std::string> labels;  // label set, or tag inventory when tagging
  bool tagging = false;
  std::size_t span_arity = 2;
  std::size_t extra_arity = 0;

  // Index of a label in the label set; throws LabelError if absent.
  std::size_t label_index(std::string_view label) const;

  friend bool operator==(const TaskSchema&, const TaskSchema&) = default;
};

struct TaskDataset {
  TaskSchema schema;
  std::vector<Example> train;
  std::vector<Example> validation;
  std::vector<Example> test;
};

// Tag inventory for the tagging task: "O", "I", then "B-<type>" sorted.
std::vector<std::string> tag_inventory(const std::vector<std::string>& types);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_EXAMPLE_H_
