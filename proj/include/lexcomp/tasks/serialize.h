#ifndef LEXCOMP_TASKS_SERIALIZE_H_
#define LEXCOMP_TASKS_SERIALIZE_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexcomp/tasks/example.h"

namespace lexcomp::tasks {

using Json = nlohmann::ordered_json;

// Classification examples carry "span" ([start, end]), optional "extra" and
// "label"; tagging examples carry "tags" instead of span and label.
Json example_to_json(const Example& example);
Example example_from_json(const Json& json);

Json schema_to_json(const TaskSchema& schema);
TaskSchema schema_from_json(const Json& json);

void write_jsonl(const std::filesystem::path& path, const std::vector<Example>& examples);
std::vector<Example> read_jsonl(const std::filesystem::path& path);

// A dataset directory holds train.jsonl, validation.jsonl, test.jsonl and
// schema.json.
void write_dataset(const std::filesystem::path& dir, const TaskDataset& dataset);
TaskDataset read_dataset(const std::filesystem::path& dir);

// Writes text to a file, throwing FormatError when it cannot be opened.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_SERIALIZE_H_
