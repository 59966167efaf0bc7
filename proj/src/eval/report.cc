#include "lexcomp/eval/report.h"

#include "lexcomp/errors.h"
#include "lexcomp/tasks/serialize.h"

namespace lexcomp::eval {

Score score(const tasks::TaskSchema& schema, const std::vector<tasks::Example>& gold,
            const std::vector<Prediction>& predictions) {
  if (gold.size() != predictions.size()) {
    throw ContractError("score: " + std::to_string(gold.size()) + " examples vs " +
                        std::to_string(predictions.size()) + " predictions");
  }
  Score s;
  if (schema.tagging) {
    std::vector<std::vector<std::string>> g, p;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      g.push_back(gold[i].tags);
      p.push_back(predictions[i].tags);
    }
    s.metric = "span_f1";
    s.spans = span_f1(g, p);
    s.value = s.spans->f1;
    return s;
  }
  std::vector<std::string> g, p;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    g.push_back(gold[i].label);
    p.push_back(predictions[i].label);
  }
  s.metric = "accuracy";
  s.value = accuracy(g, p);
  return s;
}

nlohmann::ordered_json report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["task"] = r.task;
  j["split"] = r.split;
  j["setting"] = r.setting;
  j["metric"] = r.result.metric;
  j["value"] = r.result.value;
  if (r.result.spans) {
    const SpanScore& s = *r.result.spans;
    j["spans"] = {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},
                  {"correct", s.correct},     {"predicted", s.predicted}, {"gold", s.gold}};
  }
  if (r.validation) {
    j["validation_value"] = *r.validation;
    j["epochs_run"] = r.epochs_run;
    j["best_epoch"] = r.best_epoch;
  }
  if (r.layer_weights) {
    j["layer_weights"] = *r.layer_weights;
    j["gamma"] = r.gamma.value_or(1.0);
  }
  auto& preds = j["predictions"] = nlohmann::ordered_json::array();
  for (const Prediction& p : r.predictions) {
    nlohmann::ordered_json e;
    e["id"] = p.id;
    if (p.tags.empty()) {
      e["label"] = p.label;
    } else {
      e["tags"] = p.tags;
    }
    preds.push_back(std::move(e));
  }
  return j;
}

void write_report(const std::filesystem::path& path, const EvalReport& report) {
  tasks::write_text(path, report_json(report).dump(2) + "\n");
}

}  // namespace lexcomp::eval
