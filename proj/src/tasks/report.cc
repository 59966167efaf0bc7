#include "lexcomp/tasks/report.h"

#include <algorithm>

#include "lexcomp/errors.h"
#include "lexcomp/rng.h"

namespace lexcomp::tasks {
namespace {

Json distribution(const std::vector<Example>& examples, bool tagging) {
  std::map<std::string, std::size_t> counts;
  for (const Example& e : examples) {
    if (tagging) {
      for (const auto& t : e.tags) ++counts[t];
    } else {
      ++counts[e.label];
    }
  }
  Json j = Json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

}  // namespace

BuildResult finish_build(TaskSchema schema, std::vector<Example> examples, uint64_t seed,
                         BuildReport report, const SplitRatios& ratios) {
  std::sort(examples.begin(), examples.end(),
            [](const Example& a, const Example& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < examples.size(); ++i) {
    if (examples[i].id == examples[i - 1].id) {
      throw ContractError("duplicate example id " + examples[i].id);
    }
  }
  SplitResult split = lexical_split(examples, Rng::derive(seed, "split"), ratios);
  BuildResult result;
  result.dataset.schema = std::move(schema);
  result.dataset.train = std::move(split.train);
  result.dataset.validation = std::move(split.validation);
  result.dataset.test = std::move(split.test);
  result.anchors = split.anchors;
  result.split_skewed = split.skewed;
  report.seed = seed;
  result.report = std::move(report);
  return result;
}

Json report_json(const BuildResult& result) {
  const TaskDataset& d = result.dataset;
  const bool tagging = d.schema.tagging;
  Json j;
  j["task"] = result.report.task;
  j["seed"] = result.report.seed;
  Json counts = Json::object();
  for (const auto& [k, v] : result.report.counts) counts[k] = v;
  j["counts"] = counts;
  j["emitted"] = {{"train", d.train.size()},
                  {"validation", d.validation.size()},
                  {"test", d.test.size()},
                  {"total", d.train.size() + d.validation.size() + d.test.size()}};
  Json dropped = Json::object();
  std::size_t total_dropped = 0;
  for (const auto& [k, v] : result.report.dropped) {
    dropped[k] = v;
    total_dropped += v;
  }
  j["dropped"] = {{"total", total_dropped}, {"reasons", dropped}};
  j[tagging ? "tag_distribution" : "label_distribution"] = {
      {"train", distribution(d.train, tagging)},
      {"validation", distribution(d.validation, tagging)},
      {"test", distribution(d.test, tagging)}};
  j["anchors"] = {{"train", result.anchors[0]},
                  {"validation", result.anchors[1]},
                  {"test", result.anchors[2]}};
  j["split_skewed"] = result.split_skewed;
  return j;
}

void write_build(const std::filesystem::path& dir, const BuildResult& result) {
  write_dataset(dir, result.dataset);
  write_text(dir / "build_report.json", report_json(result).dump(2) + "\n");
}

}  // namespace lexcomp::tasks
