// Noun-compound builders: literality and relations.

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "lexcomp/errors.h"
#include "lexcomp/rng.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {
namespace {

using Compound = std::pair<std::string, std::string>;

std::string compound_id(const Compound& nc) { return nc.first + "_" + nc.second; }

std::string two_digits(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", k);
  return buf;
}

}  // namespace

SplitKey parse_split_key(std::string_view name) {
  if (name == "head") return SplitKey::kHead;
  if (name == "modifier") return SplitKey::kModifier;
  throw ConfigError("unknown split key '" + std::string(name) + "' (head or modifier)");
}

BuildResult build_nc_literality(const std::vector<ScoredConstituent>& scores,
                                const std::vector<CompoundRelation>& relations,
                                const ContextIndex& contexts, uint64_t seed,
                                const LiteralityOptions& options) {
  const std::string task(task_name(TaskId::kNcLiterality));
  BuildReport report;
  report.task = task;

  // (w1, w2, target) -> literal
  std::map<std::tuple<std::string, std::string, std::string>, bool> items;
  std::set<Compound> scored;
  for (const ScoredConstituent& r : scores) {
    report.count("score_rows");
    if (!(r.score >= 0.0 && r.score <= 5.0)) {
      spdlog::warn("{}: source line {} rejected: score {} outside [0, 5]", task, r.line, r.score);
      report.drop("score_out_of_range");
      continue;
    }
    if (r.constituent != r.w1 && r.constituent != r.w2) {
      spdlog::warn("{}: source line {} rejected: '{}' is not a constituent of '{} {}'", task,
                   r.line, r.constituent, r.w1, r.w2);
      report.drop("constituent_not_in_compound");
      continue;
    }
    scored.insert({r.w1, r.w2});
    bool literal;
    if (r.score >= 4.0) {
      literal = true;
    } else if (r.score <= 2.0) {
      literal = false;
    } else {
      report.drop("score_between_thresholds");
      continue;
    }
    if (!items.emplace(std::make_tuple(r.w1, r.w2, r.constituent), literal).second) {
      report.drop("duplicate_score");
    }
  }
  for (const CompoundRelation& r : relations) {
    report.count("relation_rows");
    if (r.relation == "lexicalized") {
      report.drop("lexicalized_relation");
      continue;
    }
    if (scored.count({r.w1, r.w2})) {
      report.drop("compound_already_scored");
      continue;
    }
    bool added = items.emplace(std::make_tuple(r.w1, r.w2, r.w1), true).second;
    added = items.emplace(std::make_tuple(r.w1, r.w2, r.w2), true).second || added;
    if (added) report.count("compounds_from_relations");
  }

  std::vector<ContextRequest> requests;
  for (const auto& [key, literal] : items) {
    const auto& [w1, w2, target] = key;
    requests.push_back({task + "/" + w1 + "_" + w2 + "/" + target, {w1, w2}});
  }
  const AttachResult attached =
      attach_contexts(requests, contexts, options.contexts_per_item, Rng::derive(seed, "contexts"));
  report.drop("no_context_sentence", attached.dropped.size());

  std::vector<Example> literal, non_literal;
  std::size_t r = 0;
  for (const auto& [key, is_literal] : items) {
    const auto& [w1, w2, target] = key;
    const ContextRequest& req = requests[r++];
    auto it = attached.placements.find(req.id);
    if (it == attached.placements.end()) continue;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
      const Placement& p = it->second[k];
      Example e;
      e.id = req.id + "/" + two_digits(k);
      e.task = task;
      e.tokens = p.tokens;
      e.span = p.span;
      e.extra = std::vector<std::string>{target};
      e.label = is_literal ? "literal" : "non-literal";
      e.anchor = options.split_key == SplitKey::kHead ? w2 : w1;
      (is_literal ? literal : non_literal).push_back(std::move(e));
    }
  }

  const auto cap = static_cast<std::size_t>(
      std::floor(options.max_literal_ratio * static_cast<double>(non_literal.size())));
  if (literal.size() > cap) {
    Rng rng(Rng::derive(seed, "downsample"));
    auto keep = rng.sample_indices(literal.size(), cap);
    std::sort(keep.begin(), keep.end());
    std::vector<Example> kept;
    for (std::size_t i : keep) kept.push_back(std::move(literal[i]));
    report.drop("literal_downsampled", literal.size() - kept.size());
    literal = std::move(kept);
  }
  std::vector<Example> examples = std::move(literal);
  for (auto& e : non_literal) examples.push_back(std::move(e));
  return finish_build(task_schema(TaskId::kNcLiterality), std::move(examples), seed,
                      std::move(report));
}

std::vector<std::string> make_template(const std::vector<std::string>& paraphrase,
                                       const std::string& w1, const std::string& w2) {
  std::vector<std::string> out;
  for (const auto& t : paraphrase) {
    if (t == w1) {
      out.push_back("[w1]");
    } else if (t == w2) {
      out.push_back("[w2]");
    } else {
      out.push_back(t);
    }
  }
  return out;
}

std::vector<std::string> instantiate_template(const std::vector<std::string>& tmpl,
                                              const std::string& w1, const std::string& w2) {
  std::vector<std::string> out;
  for (const auto& t : tmpl) {
    if (t == "[w1]") {
      out.push_back(w1);
    } else if (t == "[w2]") {
      out.push_back(w2);
    } else {
      out.push_back(t);
    }
  }
  return out;
}

std::set<std::string> paraphrase_verbs(const std::vector<std::string>& tokens,
                                       const std::set<std::string>& verbs) {
  std::set<std::string> out;
  for (const auto& t : tokens) {
    const std::string lower = lowercase(t);
    if (verbs.count(lower)) out.insert(lower);
  }
  return out;
}

BuildResult build_nc_relations(const std::vector<ParaphraseRow>& rows,
                               const std::set<std::string>& verbs, const ContextIndex& contexts,
                               uint64_t seed, const RelationsOptions& options) {
  const std::string task(task_name(TaskId::kNcRelations));
  BuildReport report;
  report.task = task;

  std::map<Compound, std::set<std::vector<std::string>>> paraphrases;
  for (const ParaphraseRow& r : rows) {
    report.count("source_rows");
    if (paraphrase_verbs(r.paraphrase, verbs).empty()) {
      spdlog::debug("{}: source line {} rejected: no lexicon verb in '{}'", task, r.line,
                    join(r.paraphrase));
      report.drop("paraphrase_without_verb");
      continue;
    }
    if (!paraphrases[{r.w1, r.w2}].insert(r.paraphrase).second) report.drop("duplicate_paraphrase");
  }

  struct Template {
    Compound source;
    std::vector<std::string> tokens;
    std::set<std::string> verbs;
  };
  std::vector<Template> templates;
  std::map<Compound, std::set<std::string>> positive_verbs;
  for (const auto& [nc, ps] : paraphrases) {
    for (const auto& p : ps) {
      auto v = paraphrase_verbs(p, verbs);
      positive_verbs[nc].insert(v.begin(), v.end());
      auto tmpl = make_template(p, nc.first, nc.second);
      const bool has_w1 = std::find(tmpl.begin(), tmpl.end(), "[w1]") != tmpl.end();
      const bool has_w2 = std::find(tmpl.begin(), tmpl.end(), "[w2]") != tmpl.end();
      if (has_w1 && has_w2) templates.push_back({nc, std::move(tmpl), std::move(v)});
    }
  }

  std::vector<Example> examples;
  std::vector<ContextRequest> requests;
  std::map<std::string, Compound> negative_source;
  for (const auto& [nc, ps] : paraphrases) {
    const std::vector<std::vector<std::string>> pos_all(ps.begin(), ps.end());
    const auto& own_verbs = positive_verbs[nc];

    // Negatives: templates of compounds sharing exactly one constituent whose
    // verbs never occur among this compound's paraphrases.
    std::map<std::vector<std::string>, Compound> candidates;
    for (const Template& t : templates) {
      const bool shares_head = t.source.second == nc.second && t.source.first != nc.first;
      const bool shares_modifier = t.source.first == nc.first && t.source.second != nc.second;
      if (!shares_head && !shares_modifier) continue;
      if (std::any_of(t.verbs.begin(), t.verbs.end(),
                      [&](const std::string& v) { return own_verbs.count(v) > 0; })) {
        continue;
      }
      auto text = instantiate_template(t.tokens, nc.first, nc.second);
      if (ps.count(text)) continue;
      candidates.emplace(std::move(text), t.source);
    }

    const std::string base = task + "/" + compound_id(nc);
    Rng pos_rng(Rng::derive(seed, base + "/positives"));
    auto pos_pick = pos_rng.sample_indices(pos_all.size(), options.max_positives);
    Rng neg_rng(Rng::derive(seed, base + "/negatives"));
    std::vector<std::pair<std::vector<std::string>, Compound>> cand_list(candidates.begin(),
                                                                         candidates.end());
    auto neg_pick = neg_rng.sample_indices(cand_list.size(), pos_pick.size());
    if (neg_pick.empty()) {
      spdlog::info("{}: '{} {}' has no eligible negative template; compound skipped", task,
                   nc.first, nc.second);
      report.drop("compound_without_negatives");
      continue;
    }
    if (neg_pick.size() < pos_pick.size()) {
      report.drop("positive_trimmed_for_balance", pos_pick.size() - neg_pick.size());
      pos_pick.resize(neg_pick.size());
    }

    auto emit = [&](const std::vector<std::string>& paraphrase, const Compound* source,
                    std::size_t k) {
      const bool positive = source == nullptr;
      Example e;
      e.id = base + (positive ? "/pos" : "/neg") + two_digits(k);
      e.task = task;
      e.extra = paraphrase;
      e.label = positive ? "True" : "False";
      e.anchor = nc.second;
      requests.push_back({e.id, {nc.first, nc.second}});
      if (source) negative_source[e.id] = *source;
      examples.push_back(std::move(e));
    };
    for (std::size_t k = 0; k < pos_pick.size(); ++k) emit(pos_all[pos_pick[k]], nullptr, k);
    for (std::size_t k = 0; k < neg_pick.size(); ++k) {
      emit(cand_list[neg_pick[k]].first, &cand_list[neg_pick[k]].second, k);
    }
  }

  const AttachResult attached =
      attach_contexts(requests, contexts, 1, Rng::derive(seed, "contexts"));
  report.drop("no_context_sentence", attached.dropped.size());
  std::vector<Example> kept;
  std::map<std::string, std::string> provenance;
  for (Example& e : examples) {
    auto it = attached.placements.find(e.id);
    if (it == attached.placements.end()) continue;
    e.tokens = it->second.front().tokens;
    e.span = it->second.front().span;
    auto src = negative_source.find(e.id);
    if (src != negative_source.end()) {
      provenance[e.id] = src->second.first + " " + src->second.second;
    }
    kept.push_back(std::move(e));
  }
  BuildResult result = finish_build(task_schema(TaskId::kNcRelations), std::move(kept), seed,
                                    std::move(report));
  result.provenance = std::move(provenance);
  return result;
}

}  // namespace lexcomp::tasks
