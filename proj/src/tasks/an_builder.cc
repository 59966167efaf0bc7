#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

#include "lexcomp/rng.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {

std::vector<std::string> attribute_paraphrase(const std::string& adjective,
                                              const std::string& attribute,
                                              const std::string& noun) {
  std::string at = attribute;
  std::replace(at.begin(), at.end(), '_', ' ');
  return tokenize(adjective + " refers to the " + at + " of " + noun);
}

BuildResult build_an_attributes(const std::vector<AttributeRow>& rows, const Taxonomy& taxonomy,
                                const ContextIndex& contexts, uint64_t seed,
                                const AttributeOptions& options) {
  const std::string task(task_name(TaskId::kAnAttributes));
  BuildReport report;
  report.task = task;
  const std::size_t max_negatives = options.balance ? 1 : options.max_negatives;

  std::set<std::tuple<std::string, std::string, std::string>> positives;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> gold;
  std::map<std::string, std::set<std::string>> by_adjective, by_noun;
  for (const AttributeRow& r : rows) {
    report.count("source_rows");
    if (!taxonomy.contains(r.attribute)) {
      spdlog::warn("{}: source line {} rejected: attribute '{}' is not in the taxonomy", task,
                   r.line, r.attribute);
      report.drop("attribute_not_in_taxonomy");
      continue;
    }
    if (!positives.emplace(r.adjective, r.noun, r.attribute).second) {
      report.drop("duplicate_row");
      continue;
    }
    gold[{r.adjective, r.noun}].insert(r.attribute);
    by_adjective[r.adjective].insert(r.attribute);
    by_noun[r.noun].insert(r.attribute);
  }

  std::vector<Example> examples;
  std::vector<ContextRequest> requests;
  std::map<std::string, std::string> provenance;
  for (const auto& [adj, noun, attribute] : positives) {
    const auto& golds = gold[{adj, noun}];
    std::set<std::string> pool = by_adjective[adj];
    pool.insert(by_noun[noun].begin(), by_noun[noun].end());
    std::vector<std::string> candidates;
    for (const auto& c : pool) {
      if (golds.count(c)) continue;
      if (wu_palmer(taxonomy, c, attribute) < options.similarity_threshold) {
        candidates.push_back(c);
      }
    }
    const std::string base = task + "/" + adj + "_" + noun + "/" + attribute;
    Rng rng(Rng::derive(seed, base));
    const auto picked = rng.sample_indices(candidates.size(), max_negatives);
    if (options.balance && picked.empty()) {
      report.drop("positive_without_negative");
      continue;
    }
    auto emit = [&](const std::string& id, const std::string& at, bool positive) {
      Example e;
      e.id = id;
      e.task = task;
      e.extra = attribute_paraphrase(adj, at, noun);
      e.label = positive ? "True" : "False";
      e.anchor = adj;
      requests.push_back({e.id, {adj, noun}});
      examples.push_back(std::move(e));
    };
    emit(base + "/pos", attribute, true);
    for (std::size_t k = 0; k < picked.size(); ++k) {
      const std::string id = base + "/neg" + std::to_string(k);
      emit(id, candidates[picked[k]], false);
      provenance[id] = attribute;
    }
    if (picked.empty()) report.count("positives_without_negatives");
  }

  const AttachResult attached =
      attach_contexts(requests, contexts, 1, Rng::derive(seed, "contexts"));
  report.drop("no_context_sentence", attached.dropped.size());
  std::vector<Example> kept;
  for (Example& e : examples) {
    auto it = attached.placements.find(e.id);
    if (it == attached.placements.end()) {
      provenance.erase(e.id);
      continue;
    }
    e.tokens = it->second.front().tokens;
    e.span = it->second.front().span;
    kept.push_back(std::move(e));
  }
  BuildResult result = finish_build(task_schema(TaskId::kAnAttributes), std::move(kept), seed,
                                    std::move(report));
  result.provenance = std::move(provenance);
  return result;
}

}  // namespace lexcomp::tasks
