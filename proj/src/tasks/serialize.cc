#include "lexcomp/tasks/serialize.h"

#include <fstream>

#include "lexcomp/errors.h"

namespace lexcomp::tasks {

Json example_to_json(const Example& example) {
  Json j;
  j["id"] = example.id;
  j["task"] = example.task;
  j["tokens"] = example.tokens;
  if (!example.tags.empty()) {
    j["tags"] = example.tags;
  } else {
    if (example.span) j["span"] = {example.span->start, example.span->end};
    if (example.extra) j["extra"] = *example.extra;
    j["label"] = example.label;
  }
  j["anchor"] = example.anchor;
  return j;
}

Example example_from_json(const Json& j) {
  try {
    Example e;
    e.id = j.at("id").get<std::string>();
    e.task = j.at("task").get<std::string>();
    e.tokens = j.at("tokens").get<std::vector<std::string>>();
    if (j.contains("span")) {
      const auto& s = j.at("span");
      if (!s.is_array() || s.size() != 2) throw FormatError("span must be [start, end]");
      e.span = SpanRef{s[0].get<std::size_t>(), s[1].get<std::size_t>()};
      if (e.span->start > e.span->end || e.span->end >= e.tokens.size()) {
        throw FormatError("example " + e.id + ": span outside its tokens");
      }
    }
    if (j.contains("extra")) e.extra = j.at("extra").get<std::vector<std::string>>();
    if (j.contains("label")) e.label = j.at("label").get<std::string>();
    if (j.contains("tags")) {
      e.tags = j.at("tags").get<std::vector<std::string>>();
      if (e.tags.size() != e.tokens.size()) {
        throw FormatError("example " + e.id + ": tag count differs from token count");
      }
    }
    e.anchor = j.value("anchor", std::string());
    return e;
  } catch (const nlohmann::json::exception& err) {
    throw FormatError(std::string("malformed example: ") + err.what());
  }
}

Json schema_to_json(const TaskSchema& schema) {
  Json j;
  j["task"] = schema.task;
  j["labels"] = schema.labels;
  j["tagging"] = schema.tagging;
  j["span_arity"] = schema.span_arity;
  j["extra_arity"] = schema.extra_arity;
  return j;
}

TaskSchema schema_from_json(const Json& j) {
  try {
    TaskSchema s;
    s.task = j.at("task").get<std::string>();
    s.labels = j.at("labels").get<std::vector<std::string>>();
    s.tagging = j.at("tagging").get<bool>();
    s.span_arity = j.at("span_arity").get<std::size_t>();
    s.extra_arity = j.at("extra_arity").get<std::size_t>();
    if (s.span_arity > 2 || s.extra_arity > 2) throw FormatError("schema arity above 2");
    return s;
  } catch (const nlohmann::json::exception& err) {
    throw FormatError(std::string("malformed schema: ") + err.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Example>& examples) {
  std::string text;
  for (const Example& e : examples) {
    text += example_to_json(e).dump();
    text += '\n';
  }
  write_text(path, text);
}

std::vector<Example> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  std::vector<Example> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(example_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& err) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
    } catch (const FormatError& err) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
    }
  }
  return out;
}

void write_dataset(const std::filesystem::path& dir, const TaskDataset& dataset) {
  std::filesystem::create_directories(dir);
  write_jsonl(dir / "train.jsonl", dataset.train);
  write_jsonl(dir / "validation.jsonl", dataset.validation);
  write_jsonl(dir / "test.jsonl", dataset.test);
  write_text(dir / "schema.json", schema_to_json(dataset.schema).dump(2) + "\n");
}

TaskDataset read_dataset(const std::filesystem::path& dir) {
  std::ifstream in(dir / "schema.json");
  if (!in) throw FormatError("no schema.json in " + dir.string());
  TaskDataset d;
  try {
    d.schema = schema_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& err) {
    throw FormatError((dir / "schema.json").string() + ": " + err.what());
  }
  d.train = read_jsonl(dir / "train.jsonl");
  d.validation = read_jsonl(dir / "validation.jsonl");
  d.test = read_jsonl(dir / "test.jsonl");
  return d;
}

}  // namespace lexcomp::tasks
