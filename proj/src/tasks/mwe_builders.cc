// Builders for the tasks whose sentences come with the source: VPC, LVC and
// phrase type.

#include <spdlog/spdlog.h>

#include <cstdio>
#include <set>

#include "lexcomp/errors.h"
#include "lexcomp/model/tagging.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {
namespace {

std::string numbered(std::string_view task, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", n);
  return std::string(task) + "/" + buf;
}

void reject(BuildReport& report, std::string_view task, std::size_t line,
            const std::string& reason, const std::string& detail) {
  spdlog::warn("{}: source line {} rejected: {}", task, line, detail);
  report.drop(reason);
}

}  // namespace

TaskSchema task_schema(TaskId task) {
  TaskSchema s;
  s.task = std::string(task_name(task));
  switch (task) {
    case TaskId::kVpc: s.labels = {"VPC", "not-VPC"}; break;
    case TaskId::kLvc: s.labels = {"LVC", "not-LVC"}; break;
    case TaskId::kNcLiterality:
      s.labels = {"literal", "non-literal"};
      s.extra_arity = 1;
      break;
    case TaskId::kNcRelations:
    case TaskId::kAnAttributes:
      s.labels = {"True", "False"};
      s.extra_arity = 2;
      break;
    case TaskId::kPhraseType:
      s.labels = tag_inventory({});
      s.tagging = true;
      s.span_arity = 0;
      break;
  }
  return s;
}

BuildResult build_vpc(const std::vector<VpcRow>& rows, uint64_t seed) {
  const std::string_view task = task_name(TaskId::kVpc);
  BuildReport report;
  report.task = std::string(task);
  std::vector<Example> examples;
  for (const VpcRow& r : rows) {
    report.count("source_rows");
    if (r.verb >= r.tokens.size() || r.particle >= r.tokens.size()) {
      reject(report, task, r.line, "index_out_of_range",
             "verb or particle index outside the sentence");
      continue;
    }
    if (r.particle != r.verb + 1) {
      reject(report, task, r.line, "particle_not_after_verb",
             "particle does not directly follow the verb");
      continue;
    }
    Example e;
    e.id = numbered(task, r.line);
    e.task = report.task;
    e.tokens = r.tokens;
    e.span = SpanRef{r.verb, r.particle};
    e.label = r.positive ? "VPC" : "not-VPC";
    e.anchor = r.lemma.empty() ? lowercase(r.tokens[r.verb]) : r.lemma;
    examples.push_back(std::move(e));
  }
  return finish_build(task_schema(TaskId::kVpc), std::move(examples), seed, std::move(report));
}

BuildResult build_lvc(const std::vector<LvcRow>& rows, uint64_t seed) {
  const std::string_view task = task_name(TaskId::kLvc);
  BuildReport report;
  report.task = std::string(task);
  std::vector<Example> examples;
  for (const LvcRow& r : rows) {
    report.count("source_rows");
    if (r.start > r.end || r.end >= r.tokens.size()) {
      reject(report, task, r.line, "span_outside_sentence",
             "span (" + std::to_string(r.start) + ", " + std::to_string(r.end) +
                 ") outside a sentence of " + std::to_string(r.tokens.size()) + " tokens");
      continue;
    }
    Example e;
    e.id = numbered(task, r.line);
    e.task = report.task;
    e.tokens = r.tokens;
    e.span = SpanRef{r.start, r.end};
    e.label = r.positive ? "LVC" : "not-LVC";
    e.anchor = r.lemma.empty() ? lowercase(r.tokens[r.start]) : r.lemma;
    examples.push_back(std::move(e));
  }
  return finish_build(task_schema(TaskId::kLvc), std::move(examples), seed, std::move(report));
}

BuildResult build_phrase_type(const std::vector<TaggedSentence>& sentences, uint64_t seed) {
  const std::string_view task = task_name(TaskId::kPhraseType);
  BuildReport report;
  report.task = std::string(task);
  std::vector<Example> examples;
  std::set<std::string> types;
  for (std::size_t index = 0; index < sentences.size(); ++index) {
    const TaggedSentence& s = sentences[index];
    report.count("source_sentences");
    std::vector<std::string> tags(s.tokens.size(), "O");
    std::string error;
    bool open = false;
    std::size_t discontinuous = 0;
    for (std::size_t i = 0; i < s.tokens.size() && error.empty(); ++i) {
      const TaggedToken& t = s.tokens[i];
      if (t.discontinuous) {
        ++discontinuous;
        open = false;
        continue;  // rewritten to O, as is everything else the span covers
      }
      if (t.bio == 'B') {
        if (t.weak) {
          tags[i] = "B-COMP";
        } else if (t.type.empty()) {
          error = "token " + std::to_string(i) + " opens an untyped strong span";
        } else {
          tags[i] = "B-" + t.type;
        }
        open = true;
      } else if (t.bio == 'I') {
        if (!open) error = "token " + std::to_string(i) + " is I without a preceding B";
        tags[i] = "I";
      } else {
        open = false;
      }
    }
    if (error.empty() && !model::is_valid_tag_sequence(tags)) error = "invalid tag sequence";
    if (!error.empty()) {
      spdlog::warn("{}: sentence {} (line {}) rejected: {}", task, index, s.line, error);
      report.drop("malformed_bio");
      continue;
    }
    if (discontinuous > 0) report.count("discontinuous_tokens_to_O", discontinuous);
    for (const auto& tag : tags) {
      if (model::is_begin_tag(tag)) types.insert(tag.substr(2));
    }
    Example e;
    e.id = numbered(task, index);
    e.task = report.task;
    for (const auto& t : s.tokens) e.tokens.push_back(t.token);
    e.tags = std::move(tags);
    e.anchor = !s.doc_id.empty() ? s.doc_id
               : !s.sent_id.empty() ? s.sent_id
                                    : "sentence-" + std::to_string(index);
    examples.push_back(std::move(e));
  }
  TaskSchema schema = task_schema(TaskId::kPhraseType);
  schema.labels = tag_inventory({types.begin(), types.end()});
  return finish_build(std::move(schema), std::move(examples), seed, std::move(report));
}

}  // namespace lexcomp::tasks
