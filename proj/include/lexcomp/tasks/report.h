#ifndef LEXCOMP_TASKS_REPORT_H_
#define LEXCOMP_TASKS_REPORT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lexcomp/tasks/example.h"
#include "lexcomp/tasks/serialize.h"
#include "lexcomp/tasks/split.h"

namespace lexcomp::tasks {

// Bookkeeping of one dataset build.
struct BuildReport {
  std::string task;
  uint64_t seed = 0;
  std::map<std::string, std::size_t> counts;   // named tallies ("source_rows", ...)
  std::map<std::string, std::size_t> dropped;  // reason -> count

  void count(const std::string& key, std::size_t n = 1) { counts[key] += n; }
  void drop(const std::string& reason, std::size_t n = 1) { dropped[reason] += n; }
};

struct BuildResult {
  TaskDataset dataset;
  BuildReport report;
  std::array<std::size_t, 3> anchors{};
  bool split_skewed = false;
  // Builder-specific notes per example id, kept in memory only.
  std::map<std::string, std::string> provenance;
};

// Splits the examples lexically and assembles the dataset. Examples are
// sorted by id first so the output does not depend on construction order.
BuildResult finish_build(TaskSchema schema, std::vector<Example> examples, uint64_t seed,
                         BuildReport report, const SplitRatios& ratios = {});

// Emitted and dropped counts, label (or tag) distributions and anchor counts
// per split.
Json report_json(const BuildResult& result);

// Writes the three splits, schema.json and build_report.json.
void write_build(const std::filesystem::path& dir, const BuildResult& result);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_REPORT_H_
