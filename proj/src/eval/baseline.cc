#include "lexcomp/eval/baseline.h"

#include <map>

#include "lexcomp/errors.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::eval {

std::string_view variant_name(MajorityVariant v) {
  switch (v) {
    case MajorityVariant::kAll: return "all";
    case MajorityVariant::kFirst: return "first";
    case MajorityVariant::kLast: return "last";
  }
  return "?";
}

MajorityVariant parse_variant(std::string_view name) {
  const std::string n = tasks::lowercase(std::string(name));
  if (n == "all") return MajorityVariant::kAll;
  if (n == "first") return MajorityVariant::kFirst;
  if (n == "last") return MajorityVariant::kLast;
  throw ConfigError("unknown baseline variant '" + std::string(name) +
                    "' (expected all, first or last)");
}

namespace {

// std::map iterates in lexicographic order, so the first maximum wins ties.
std::string mode_of(const std::map<std::string, std::size_t>& counts) {
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [label, n] : counts) {
    if (n > best_count) {
      best = &label;
      best_count = n;
    }
  }
  if (!best) throw ContractError("mode of an empty label set");
  return *best;
}

std::string constituent(const tasks::Example& e, MajorityVariant v) {
  if (!e.span) {
    throw ConfigError("majority " + std::string(variant_name(v)) + " needs a span; example " +
                      e.id + " has none");
  }
  const std::size_t i = v == MajorityVariant::kFirst ? e.span->start : e.span->end;
  if (i >= e.tokens.size()) throw IndexError("span of example " + e.id + " outside its tokens");
  return tasks::lowercase(e.tokens[i]);
}

}  // namespace

std::string mode_label(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  return mode_of(counts);
}

EvalReport majority_baseline(MajorityVariant variant, const tasks::TaskSchema& schema,
                             const std::vector<tasks::Example>& train,
                             const std::vector<tasks::Example>& test) {
  if (train.empty()) throw ConfigError("majority baseline needs a non-empty train split");
  if (test.empty()) throw ConfigError("majority baseline needs a non-empty test split");
  EvalReport report;
  report.task = schema.task;
  report.setting = {{"model", "majority"}, {"variant", std::string(variant_name(variant))}};

  if (schema.tagging) {
    if (variant != MajorityVariant::kAll) {
      throw ConfigError("only the 'all' majority baseline applies to a tagging task");
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& e : train) {
      for (const auto& t : e.tags) {
        if (t != "I") ++counts[t];
      }
    }
    const std::string tag = counts.empty() ? "O" : mode_of(counts);
    for (const auto& e : test) {
      report.predictions.push_back({e.id, "", std::vector<std::string>(e.tokens.size(), tag)});
    }
    report.result = score(schema, test, report.predictions);
    return report;
  }

  std::map<std::string, std::size_t> global;
  std::map<std::string, std::map<std::string, std::size_t>> by_key;
  for (const auto& e : train) {
    ++global[e.label];
    if (variant != MajorityVariant::kAll) ++by_key[constituent(e, variant)][e.label];
  }
  const std::string fallback = mode_of(global);
  std::map<std::string, std::string> keyed;
  for (const auto& [key, counts] : by_key) keyed[key] = mode_of(counts);

  for (const auto& e : test) {
    std::string label = fallback;
    if (variant != MajorityVariant::kAll) {
      auto it = keyed.find(constituent(e, variant));
      if (it != keyed.end()) label = it->second;
    }
    report.predictions.push_back({e.id, label, {}});
  }
  report.result = score(schema, test, report.predictions);
  return report;
}

}  // namespace lexcomp::eval
