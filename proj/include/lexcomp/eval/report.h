#ifndef LEXCOMP_EVAL_REPORT_H_
#define LEXCOMP_EVAL_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexcomp/eval/metrics.h"
#include "lexcomp/tasks/example.h"

namespace lexcomp::eval {

struct Prediction {
  std::string id;
  std::string label;              // classification
  std::vector<std::string> tags;  // tagging
};

// Headline metric of a split: accuracy, or span F1 for the tagging task.
struct Score {
  std::string metric;
  double value = 0.0;
  std::optional<SpanScore> spans;
};

Score score(const tasks::TaskSchema& schema, const std::vector<tasks::Example>& gold,
            const std::vector<Prediction>& predictions);

struct EvalReport {
  std::string task;
  std::string split = "test";
  std::map<std::string, std::string> setting;
  Score result;
  std::optional<double> validation;  // best validation score, trained runs only
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  std::optional<std::vector<double>> layer_weights;
  std::optional<double> gamma;
  std::vector<Prediction> predictions;
};

nlohmann::ordered_json report_json(const EvalReport& report);
void write_report(const std::filesystem::path& path, const EvalReport& report);

}  // namespace lexcomp::eval

#endif  // LEXCOMP_EVAL_REPORT_H_
