#include "lexcomp/tasks/example.h"

#include <algorithm>
#include <array>
#include <set>

#include "lexcomp/errors.h"

namespace lexcomp::tasks {
namespace {

constexpr std::array<std::pair<TaskId, std::string_view>, 6> kNames{{
    {TaskId::kVpc, "vpc"},
    {TaskId::kLvc, "lvc"},
    {TaskId::kNcLiterality, "nc-literality"},
    {TaskId::kNcRelations, "nc-relations"},
    {TaskId::kAnAttributes, "an-attributes"},
    {TaskId::kPhraseType, "phrase-type"},
}};

}  // namespace

std::string_view task_name(TaskId id) {
  for (const auto& [task, name] : kNames) {
    if (task == id) return name;
  }
  return "unknown";
}

TaskId parse_task(std::string_view name) {
  for (const auto& [task, n] : kNames) {
    if (n == name) return task;
  }
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::size_t TaskSchema::label_index(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw LabelError("label '" + std::string(label) + "' is not in the " + task +
                     " label set");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::string> tag_inventory(const std::vector<std::string>& types) {
  std::vector<std::string> tags{"O", "I"};
  std::set<std::string> sorted(types.begin(), types.end());
  for (const auto& t : sorted) tags.push_back("B-" + t);
  return tags;
}

}  // namespace lexcomp::tasks
