// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "../support/fixtures.h"
#include "../support/synthetic.h"
#include "../support/temp_dir.h"
#include "lexcomp/autodiff/gradcheck.h"
#include "lexcomp/autodiff/ops.h"
#include "lexcomp/cli/cli.h"
#include "lexcomp/embeddings/static_table.h"
#include "lexcomp/errors.h"
#include "lexcomp/eval/metrics.h"
#include "lexcomp/eval/train.h"
#include "lexcomp/model/tagging.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/serialize.h"

using namespace lexcomp;
namespace fs = std::filesystem;
using Strings = std::vector<std::string>;

namespace {

constexpr double kGradTolerance = 1e-4;
constexpr std::size_t kMinGradInstances = 50;
constexpr double kGradSeconds = 60.0;
constexpr double kOverfitTarget = 0.99;
constexpr std::size_t kOverfitMaxEpochs = 500;
constexpr double kOverfitSeconds = 300.0;
constexpr std::size_t kDecodeCases = 200;
constexpr std::size_t kMetricCorpora = 100;
constexpr double kMetricTolerance = 1e-12;
constexpr double kSplitTolerance = 0.02;
constexpr double kSimilarityThreshold = 0.4;
constexpr double kTable1Tolerance = 0.05;

struct Outcome {
  enum Status { kPass, kFail, kNotApplicable } status;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- gradients

ad::Tensor random_tensor(Rng& rng, ad::Shape shape) {
  ad::Tensor t = ad::Tensor::zeros(shape);
  for (double& x : t.data()) x = rng.uniform(-1.0, 1.0);
  return t;
}

ad::Tensor away_from_zero(Rng& rng, ad::Shape shape) {
  ad::Tensor t = ad::Tensor::zeros(shape);
  for (double& x : t.data()) x = (rng.below(2) ? 1.0 : -1.0) * rng.uniform(0.1, 1.0);
  return t;
}

ad::Node project(const ad::Node& x, const ad::Tensor& w) {
  return ad::sum(ad::mul(x, ad::constant(w)));
}

std::vector<ad::Parameter*> ptrs(std::vector<ad::Parameter>& ps) {
  std::vector<ad::Parameter*> out;
  for (auto& p : ps) out.push_back(&p);
  return out;
}

embeddings::LayeredSequence random_layers(Rng& rng, std::size_t n, std::size_t d,
                                          std::size_t layers) {
  embeddings::LayeredSequence s;
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back("t" + std::to_string(i));
  s.num_layers = layers;
  s.dim = d;
  s.values.resize(layers * n * d);
  for (double& x : s.values) x = rng.uniform(-1.0, 1.0);
  return s;
}

void clear_relu_kinks(model::ProbeModel& m, const model::EmbeddedExample& ex, double margin) {
  const ad::Node x = m.features(ex);
  model::ClassifierHead& head = m.head();
  const ad::Tensor z =
      ad::add(ad::matvec(head.hidden().node(), x), head.hidden_bias().node()).value();
  ad::Tensor& bias = head.hidden_bias().mutable_value();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (std::abs(z[j]) < margin) bias[j] += z[j] >= 0 ? margin : -margin;
  }
}

Outcome gradient_suite() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(7001);
  std::map<std::string, std::size_t> instances;
  double worst = 0.0;
  std::string worst_at;
  auto record = [&](const std::string& what, const ad::GradCheckResult& r) {
    ++instances[what];
    if (r.max_error >= worst) {
      worst = r.max_error;
      worst_at = what + " " + r.worst_entry;
    }
  };
  using namespace ad;
  for (std::size_t trial = 0; trial < kMinGradInstances; ++trial) {
    const std::size_t m = 1 + rng.below(4), k = 1 + rng.below(4), n = 1 + rng.below(4);
    std::vector<Parameter> ps;
    ps.emplace_back("a", random_tensor(rng, {m, k}));
    ps.emplace_back("b", random_tensor(rng, {k, n}));
    ps.emplace_back("x", random_tensor(rng, {k}));
    ps.emplace_back("y", random_tensor(rng, {k}));
    ps.emplace_back("s", random_tensor(rng, {1}));
    ps.emplace_back("r", away_from_zero(rng, {k}));
    auto pp = ptrs(ps);
    const Tensor wmn = random_tensor(rng, {m, n}), wm = random_tensor(rng, {m}),
                 wk = random_tensor(rng, {k}), wkm = random_tensor(rng, {k, m});
    auto A = [&] { return ps[0].node(); };
    auto X = [&] { return ps[2].node(); };
    auto Y = [&] { return ps[3].node(); };
    record("matmul", check_gradients([&] { return project(matmul(A(), ps[1].node()), wmn); }, pp));
    record("matvec", check_gradients([&] { return project(matvec(A(), X()), wm); }, pp));
    record("transpose", check_gradients([&] { return project(transpose(A()), wkm); }, pp));
    record("dot", check_gradients([&] { return dot(X(), Y()); }, pp));
    record("add", check_gradients([&] { return project(add(X(), Y()), wk); }, pp));
    record("mul", check_gradients([&] { return project(mul(X(), Y()), wk); }, pp));
    record("scale", check_gradients([&] { return project(scale(X(), 1.3), wk); }, pp));
    record("scale_by_node", check_gradients([&] { return project(scale(X(), ps[4].node()), wk); }, pp));
    record("tanh", check_gradients([&] { return project(ad::tanh(X()), wk); }, pp));
    record("sigmoid", check_gradients([&] { return project(sigmoid(X()), wk); }, pp));
    record("relu", check_gradients([&] { return project(relu(ps[5].node()), wk); }, pp));
    record("add_n", check_gradients([&] {
             std::vector<Node> t{X(), Y(), X()};
             return project(add_n(t), wk);
           }, pp));
    record("sum", check_gradients([&] { return sum(mul(X(), Y())); }, pp));
    record("softmax", check_gradients([&] { return project(softmax(X()), wk); }, pp));
    const std::size_t gold = rng.below(k);
    record("cross_entropy", check_gradients([&] { return cross_entropy(softmax(X()), gold); }, pp));
    const Tensor w2k = random_tensor(rng, {2 * k});
    record("concat", check_gradients([&] {
             std::vector<Node> parts{X(), Y()};
             return project(concat(parts), w2k);
           }, pp));
    const std::size_t off = rng.below(2 * k), len = 1 + rng.below(2 * k - off);
    const Tensor wl = random_tensor(rng, {len});
    record("slice", check_gradients([&] {
             std::vector<Node> parts{X(), Y()};
             return project(slice(concat(parts), off, len), wl);
           }, pp));
    const std::size_t r = rng.below(m);
    record("row", check_gradients([&] { return project(row(A(), r), wk); }, pp));
    const Tensor w2 = random_tensor(rng, {2, k});
    record("stack_rows", check_gradients([&] {
             std::vector<Node> rows{X(), Y()};
             return project(stack_rows(rows), w2);
           }, pp));
    const uint64_t mask_seed = rng.next();
    record("dropout", check_gradients([&] {
             Rng mask(mask_seed);
             return project(dropout(ps[5].node(), 0.3, mask, true), wk);
           }, pp));
  }

  const model::EncoderKind encoders[] = {model::EncoderKind::kNone, model::EncoderKind::kBiLm,
                                         model::EncoderKind::kAtt};
  for (model::EncoderKind kind : encoders) {
    for (std::size_t trial = 0; trial < kMinGradInstances; ++trial) {
      const std::size_t n = 1 + rng.below(4), d = 1 + rng.below(4), layers = 1 + rng.below(3);
      tasks::TaskSchema schema;
      schema.task = "synthetic";
      schema.labels = {"a", "b", "c"};
      schema.extra_arity = rng.below(3);
      model::ModelConfig mc{kind, layers > 1 ? embeddings::LayerMode::kAll
                                             : embeddings::LayerMode::kTop,
                            trial == 0 ? 300u : 5u, 0.2};
      model::ProbeModel pm(schema, mc, d, layers, rng.next());
      model::EmbeddedExample ex;
      ex.sentence = random_layers(rng, n, d, layers);
      if (schema.extra_arity > 0) ex.extra = random_layers(rng, 1 + rng.below(3), d, layers);
      const std::size_t s = rng.below(n);
      ex.span = model::SpanRef{s, s + rng.below(n - s)};
      ex.gold = rng.below(3);
      if (pm.has_mix()) {
        for (double& w : pm.parameters()[0]->mutable_value().data()) w = rng.uniform(-1, 1);
      }
      clear_relu_kinks(pm, ex, 0.05);
      const bool train = trial % 2 == 1;
      auto params = pm.parameters();
      record(std::string("stack:") + std::string(model::encoder_name(kind)),
             check_gradients([&] {
               Rng mask(99);
               return pm.loss(ex, train, mask);
             }, params));
    }
  }
  const double elapsed = seconds_since(start);
  std::size_t least = SIZE_MAX, total = 0;
  for (const auto& [op, count] : instances) {
    least = std::min(least, count);
    total += count;
  }
  const bool pass = worst < kGradTolerance && least >= kMinGradInstances && elapsed < kGradSeconds;
  return {pass ? Outcome::kPass : Outcome::kFail,
          fmt::format("{} checks over {} ops/stacks (>= {} each), worst rel err {:.2e} at {}, "
                      "{:.1f} s",
                      total, instances.size(), least, worst, worst_at, elapsed)};
}

// ------------------------------------------------------------------ overfit

Outcome overfit_suite() {
  const auto start = std::chrono::steady_clock::now();
  const tasks::TaskId ids[] = {tasks::TaskId::kVpc,          tasks::TaskId::kLvc,
                               tasks::TaskId::kNcLiterality, tasks::TaskId::kNcRelations,
                               tasks::TaskId::kAnAttributes, tasks::TaskId::kPhraseType};
  std::string failures;
  std::size_t worst_epochs = 0;
  double lowest = 1.0;
  for (tasks::TaskId id : ids) {
    const auto data = testing::overfit_dataset(id, 20, 40 + static_cast<uint64_t>(id));
    const auto source = testing::static_source(data, 8, 3);
    const auto prepared = eval::prepare(data, source);
    for (auto kind : {model::EncoderKind::kNone, model::EncoderKind::kBiLm,
                      model::EncoderKind::kAtt}) {
      model::ProbeModel m(data.schema, {kind, embeddings::LayerMode::kTop, 32, 0.2}, 8, 1, 5);
      eval::TrainConfig cfg;
      cfg.max_epochs = kOverfitMaxEpochs;
      cfg.patience = kOverfitMaxEpochs - 1;
      cfg.adam.lr = 1e-2;
      cfg.seed = 9;
      cfg.target = 1.0;
      const auto r = eval::train(m, prepared, cfg);
      const double score = eval::evaluate(m, data.train, prepared.train, "train").result.value;
      lowest = std::min(lowest, score);
      worst_epochs = std::max(worst_epochs, r.report.best_epoch);
      if (score < kOverfitTarget) {
        failures += fmt::format(" {}/{}={:.3f}", data.schema.task, model::encoder_name(kind),
                                score);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = failures.empty() && elapsed < kOverfitSeconds;
  return {pass ? Outcome::kPass : Outcome::kFail,
          fmt::format("6 tasks x 3 encodings, lowest train score {:.3f}, slowest at epoch {}, "
                      "{:.1f} s{}",
                      lowest, worst_epochs, elapsed, failures.empty() ? "" : ";" + failures)};
}

// ----------------------------------------------------------------- decoding

void enumerate_valid(std::size_t n, const Strings& inventory, Strings& cur,
                     std::vector<Strings>& out) {
  if (cur.size() == n) {
    if (model::is_valid_tag_sequence(cur)) out.push_back(cur);
    return;
  }
  for (const auto& t : inventory) {
    cur.push_back(t);
    enumerate_valid(n, inventory, cur, out);
    cur.pop_back();
  }
}

Outcome decoding_oracle() {
  Rng rng(7003);
  std::size_t matches = 0;
  for (std::size_t c = 0; c < kDecodeCases; ++c) {
    const std::size_t n = 1 + rng.below(6);
    const Strings inventory = rng.below(2) ? Strings{"O", "I", "B-X"}
                                           : Strings{"O", "I", "B-X", "B-Y"};
    std::vector<std::vector<double>> dists(n, std::vector<double>(inventory.size()));
    for (auto& d : dists) {
      double z = 0.0;
      for (double& p : d) z += p = std::exp(2.0 * rng.normal());
      for (double& p : d) p /= z;
    }
    std::vector<Strings> all;
    Strings cur;
    enumerate_valid(n, inventory, cur, all);
    const Strings* best = nullptr;
    double best_score = -INFINITY;
    for (const auto& seq : all) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto k = std::find(inventory.begin(), inventory.end(), seq[i]) - inventory.begin();
        s += std::log(dists[i][static_cast<std::size_t>(k)]);
      }
      if (s > best_score) {
        best_score = s;
        best = &seq;
      }
    }
    matches += model::decode_tags(dists, inventory) == *best;
  }
  return {matches == kDecodeCases ? Outcome::kPass : Outcome::kFail,
          fmt::format("{}/{} score matrices (n <= 6, T <= 4) match brute force", matches,
                      kDecodeCases)};
}

// ------------------------------------------------------------------- metric

double oracle_span_f1(const std::vector<Strings>& gold, const std::vector<Strings>& pred) {
  auto spans = [](const std::vector<Strings>& corpus) {
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> out;
    for (std::size_t s = 0; s < corpus.size(); ++s) {
      const Strings& t = corpus[s];
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].rfind("B-", 0) != 0) continue;
        for (std::size_t j = i; j < t.size(); ++j) {
          bool run = true;
          for (std::size_t k = i + 1; k <= j; ++k) run = run && t[k] == "I";
          if (run && (j + 1 == t.size() || t[j + 1] != "I")) out.insert({s, i, j, t[i].substr(2)});
        }
      }
    }
    return out;
  };
  const auto g = spans(gold), p = spans(pred);
  double hit = 0;
  for (const auto& x : p) hit += static_cast<double>(g.count(x));
  const double prec = p.empty() ? 0.0 : hit / static_cast<double>(p.size());
  const double rec = g.empty() ? 0.0 : hit / static_cast<double>(g.size());
  return prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
}

Outcome metric_oracle() {
  Rng rng(7004);
  const auto schema = testing::synthetic_schema(tasks::TaskId::kPhraseType);
  double worst = 0.0;
  for (std::size_t c = 0; c < kMetricCorpora; ++c) {
    std::vector<Strings> gold, pred;
    const std::size_t sentences = 1 + rng.below(15);
    for (std::size_t s = 0; s < sentences; ++s) {
      const std::size_t n = 1 + rng.below(10);
      gold.push_back(testing::random_tags(schema, n, rng));
      pred.push_back(rng.below(3) == 0 ? gold.back() : testing::random_tags(schema, n, rng));
    }
    worst = std::max(worst, std::abs(eval::span_f1(gold, pred).f1 - oracle_span_f1(gold, pred)));
  }
  return {worst <= kMetricTolerance ? Outcome::kPass : Outcome::kFail,
          fmt::format("{} random corpora, max |F1 - oracle| = {:.1e}", kMetricCorpora, worst)};
}

// ----------------------------------------------------------------- builders

std::vector<tasks::Example> all_examples(const tasks::TaskDataset& d) {
  std::vector<tasks::Example> out = d.train;
  out.insert(out.end(), d.validation.begin(), d.validation.end());
  out.insert(out.end(), d.test.begin(), d.test.end());
  return out;
}

bool anchors_disjoint(const tasks::TaskDataset& d) {
  std::map<std::string, int> where;
  int split = 0;
  for (const auto* s : {&d.train, &d.validation, &d.test}) {
    for (const auto& e : *s) {
      auto [it, fresh] = where.emplace(e.anchor, split);
      if (!fresh && it->second != split) return false;
    }
    ++split;
  }
  return true;
}

bool ratios_ok(const tasks::TaskDataset& d) {
  const double n = static_cast<double>(d.train.size() + d.validation.size() + d.test.size());
  return std::abs(d.train.size() / n - 0.8) <= kSplitTolerance &&
         std::abs(d.validation.size() / n - 0.1) <= kSplitTolerance &&
         std::abs(d.test.size() / n - 0.1) <= kSplitTolerance;
}

std::vector<tasks::LvcRow> synthetic_lvc(std::size_t verbs, std::size_t per_verb) {
  std::vector<tasks::LvcRow> rows;
  std::size_t line = 1;
  for (std::size_t v = 0; v < verbs; ++v) {
    for (std::size_t k = 0; k < per_verb; ++k) {
      rows.push_back({{"we", "lverb" + std::to_string(v), "a", "noun" + std::to_string(k), "today"},
                      1, 3, (v + k) % 2 == 0, "", line++});
    }
  }
  return rows;
}

std::vector<tasks::TaggedSentence> synthetic_streusle(std::size_t docs, std::size_t per_doc,
                                                      Rng& rng) {
  std::vector<tasks::TaggedSentence> out;
  for (std::size_t d = 0; d < docs; ++d) {
    for (std::size_t s = 0; s < per_doc; ++s) {
      tasks::TaggedSentence ts;
      ts.doc_id = "doc" + std::to_string(d);
      ts.sent_id = ts.doc_id + "-" + std::to_string(s);
      bool open = false;
      for (std::size_t i = 0; i < 8; ++i) {
        tasks::TaggedToken t{"w" + std::to_string(i), 'O', "", false, false};
        const double u = rng.uniform();
        if (open && u < 0.3) {
          t.bio = 'I';
        } else if (u < 0.5) {
          t.bio = 'B';
          t.weak = rng.below(4) == 0;
          t.type = t.weak ? "" : (rng.below(2) ? "V.VPC.full" : "N");
          t.discontinuous = rng.below(6) == 0;
          open = true;
        } else {
          open = false;
        }
        ts.tokens.push_back(t);
      }
      out.push_back(ts);
    }
  }
  return out;
}

Outcome builder_constraints() {
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };

  const auto vpc = tasks::build_vpc(testing::synthetic_vpc(50, 4, 1), 11).dataset;
  expect(anchors_disjoint(vpc), "vpc anchors");
  expect(ratios_ok(vpc), "vpc ratios");
  const auto lvc = tasks::build_lvc(synthetic_lvc(50, 4), 12).dataset;
  expect(anchors_disjoint(lvc), "lvc anchors");
  expect(ratios_ok(lvc), "lvc ratios");
  Rng rng(7005);
  const auto pt = tasks::build_phrase_type(synthetic_streusle(60, 3, rng), 13).dataset;
  expect(anchors_disjoint(pt), "phrase-type anchors");
  expect(ratios_ok(pt), "phrase-type ratios");
  for (const auto& e : all_examples(pt)) expect(model::is_valid_tag_sequence(e.tags), "tags valid");

  // Literality: scores spread over [0, 5] on 80 compounds with 20 heads.
  std::vector<tasks::ScoredConstituent> scores;
  std::map<std::pair<std::string, std::string>, double> source_score;
  std::vector<Strings> phrases;
  std::size_t line = 1;
  for (std::size_t i = 0; i < 80; ++i) {
    const std::string w1 = "m" + std::to_string(i), w2 = "h" + std::to_string(i % 20);
    phrases.push_back({w1, w2});
    for (const auto& target : {w1, w2}) {
      const double s = std::round(rng.uniform(0.0, 5.0) * 2.0) / 2.0;
      scores.push_back({w1, w2, target, s, line++});
      source_score[{w1 + " " + w2, target}] = s;
    }
  }
  std::vector<tasks::CompoundRelation> relations{{"r1", "h3", "purpose", line++},
                                                 {"r2", "h4", "lexicalized", line++}};
  phrases.push_back({"r1", "h3"});
  phrases.push_back({"r2", "h4"});
  const auto lit = tasks::build_nc_literality(scores, relations,
                                              testing::contexts_for(phrases, 12), 14);
  expect(anchors_disjoint(lit.dataset), "literality anchors");
  std::size_t literal = 0, non_literal = 0;
  for (const auto& e : all_examples(lit.dataset)) {
    const std::string nc = e.tokens[e.span->start] + " " + e.tokens[e.span->end];
    auto it = source_score.find({nc, e.extra->front()});
    const bool is_literal = e.label == "literal";
    (is_literal ? literal : non_literal)++;
    if (it == source_score.end()) {
      expect(is_literal && nc == "r1 h3", "relation-derived literality item");
    } else {
      expect(is_literal ? it->second >= 4.0 : it->second <= 2.0, "literality threshold " + nc);
    }
  }
  expect(literal <= 4 * non_literal, "literality ratio");

  // NC Relations.
  const auto para = testing::synthetic_paraphrases(8, 6, 4, 10, 15);
  const auto rel = tasks::build_nc_relations(para.rows, para.verbs,
                                             testing::contexts_for([&] {
                                               std::vector<Strings> p;
                                               for (const auto& [a, b] : para.compounds)
                                                 p.push_back({a, b});
                                               return p;
                                             }(), 2),
                                             16);
  expect(anchors_disjoint(rel.dataset), "nc-relations anchors");
  std::map<std::pair<std::string, std::string>, std::set<std::string>> verbs_of;
  for (const auto& r : para.rows) {
    for (const auto& t : r.paraphrase) {
      if (para.verbs.count(t)) verbs_of[{r.w1, r.w2}].insert(t);
    }
  }
  std::size_t negatives = 0, good = 0;
  std::map<std::string, std::pair<int, int>> balance;
  for (const auto& e : all_examples(rel.dataset)) {
    const std::string w1 = e.tokens[e.span->start], w2 = e.tokens[e.span->end];
    auto& b = balance[w1 + " " + w2];
    if (e.label == "True") {
      ++b.first;
      continue;
    }
    ++b.second;
    ++negatives;
    bool ok = true;
    for (const auto& t : *e.extra) ok = ok && !verbs_of[{w1, w2}].count(t);
    const std::string& src = rel.provenance.at(e.id);
    const std::string s1 = src.substr(0, src.find(' ')), s2 = src.substr(src.find(' ') + 1);
    ok = ok && ((s1 == w1) != (s2 == w2));
    good += ok;
  }
  expect(negatives > 0 && good == negatives, "nc-relations negatives");
  for (const auto& [nc, b] : balance) expect(b.first == b.second, "nc-relations balance " + nc);

  // AN Attributes.
  const auto attr = testing::synthetic_attributes(40, 4, 17);
  const auto taxonomy = tasks::Taxonomy::from_edges(attr.taxonomy);
  const auto an = tasks::build_an_attributes(attr.rows, taxonomy,
                                             testing::contexts_for(attr.phrases, 2), 18);
  expect(anchors_disjoint(an.dataset), "an-attributes anchors");
  std::size_t an_neg = 0, an_ok = 0;
  for (const auto& e : all_examples(an.dataset)) {
    if (e.label != "False") continue;
    ++an_neg;
    an_ok += tasks::wu_palmer(taxonomy, (*e.extra)[4], an.provenance.at(e.id)) <
             kSimilarityThreshold;
  }
  expect(an_neg > 0 && an_ok == an_neg, "an-attributes similarity");

  std::string detail = fmt::format(
      "6 builders; splits within {:.0f}pp on vpc/lvc/phrase-type; {} nc-relations and {} "
      "an-attributes negatives checked; literality {}:{}",
      100 * kSplitTolerance, negatives, an_neg, literal, non_literal);
  if (!problems.empty()) detail += "; failed: " + problems.front();
  return {problems.empty() ? Outcome::kPass : Outcome::kFail, detail};
}

// --------------------------------------------------------------- wu-palmer

Outcome wu_palmer_oracle() {
  Rng rng(7006);
  const auto edges = testing::random_taxonomy_edges(50, rng);
  const auto t = tasks::Taxonomy::from_edges(edges);
  std::map<std::string, std::vector<std::string>> parents;
  std::set<std::string> nodes;
  for (const auto& [c, p] : edges) {
    parents[c].push_back(p);
    nodes.insert(c);
    nodes.insert(p);
  }
  std::function<std::size_t(const std::string&)> depth = [&](const std::string& x) {
    auto it = parents.find(x);
    if (it == parents.end()) return std::size_t{1};
    std::size_t best = SIZE_MAX;
    for (const auto& p : it->second) best = std::min(best, depth(p) + 1);
    return best;
  };
  std::function<void(const std::string&, std::set<std::string>&)> up =
      [&](const std::string& x, std::set<std::string>& out) {
        out.insert(x);
        auto it = parents.find(x);
        if (it != parents.end()) {
          for (const auto& p : it->second) up(p, out);
        }
      };
  std::size_t pairs = 0, exact = 0;
  for (const auto& a : nodes) {
    std::set<std::string> ua;
    up(a, ua);
    for (const auto& b : nodes) {
      std::set<std::string> ub;
      up(b, ub);
      std::size_t lcs = 0;
      for (const auto& x : ua) {
        if (ub.count(x)) lcs = std::max(lcs, depth(x));
      }
      lcs = std::min({lcs, depth(a), depth(b)});
      const double expected = 2.0 * lcs / static_cast<double>(depth(a) + depth(b));
      ++pairs;
      exact += tasks::wu_palmer(t, a, b) == expected;
    }
  }
  return {exact == pairs ? Outcome::kPass : Outcome::kFail,
          fmt::format("{}/{} node pairs on a {}-node multi-parent taxonomy equal the "
                      "ancestor-enumeration oracle",
                      exact, pairs, nodes.size())};
}

// ------------------------------------------------------ CLI-level criteria

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str()};
}

Outcome balanced_baseline() {
  testing::TempDir dir;
  testing::write_paraphrase_source(dir.path(), testing::synthetic_paraphrases(8, 6, 4, 10, 19));
  const auto nc = dir / "nc";
  const auto build_nc = cli({"build-task", "--task", "nc-relations", "--source",
                             (dir / "paraphrases.tsv").string(), "--verbs",
                             (dir / "verbs.txt").string(), "--contexts",
                             (dir / "contexts.txt").string(), "--seed", "7", "--out", nc.string(),
                             "--quiet"});
  testing::TempDir adir;
  testing::write_attribute_source(adir.path(), testing::synthetic_attributes(40, 4, 20));
  const auto an = adir / "an";
  const auto build_an = cli({"build-task", "--task", "an-attributes", "--taxonomy",
                             (adir / "taxonomy.tsv").string(), "--source",
                             (adir / "attributes.tsv").string(), "--contexts",
                             (adir / "contexts.txt").string(), "--balance", "--seed", "7",
                             "--out", an.string(), "--quiet"});
  if (build_nc.code != 0 || build_an.code != 0) return {Outcome::kFail, "build-task failed"};
  std::string detail;
  bool pass = true;
  for (const auto& [name, path] : {std::pair{"nc-relations", nc}, std::pair{"an-attributes", an}}) {
    const auto r = cli({"baseline", "--variant", "all", "--dataset", path.string()});
    const std::size_t test_size = tasks::read_dataset(path).test.size();
    double acc = -1.0;
    if (r.code == 0 && r.out.rfind("accuracy ", 0) == 0) acc = std::stod(r.out.substr(9));
    const bool ok = std::abs(acc - 0.5) <= 1.0 / static_cast<double>(test_size);
    pass = pass && ok;
    detail += fmt::format("{}{} {:.3f} (test size {})", detail.empty() ? "" : "; ", name, acc,
                          test_size);
  }
  return {pass ? Outcome::kPass : Outcome::kFail, detail};
}

Outcome pipeline_determinism() {
  std::vector<std::string> runs;
  for (int k = 0; k < 2; ++k) {
    testing::TempDir dir;
    testing::write_paraphrase_source(dir.path(), testing::synthetic_paraphrases(6, 5, 4, 10, 21));
    const auto data = dir / "data";
    if (cli({"build-task", "--task", "nc-relations", "--source",
             (dir / "paraphrases.tsv").string(), "--verbs", (dir / "verbs.txt").string(),
             "--contexts", (dir / "contexts.txt").string(), "--seed", "3", "--out", data.string(),
             "--quiet"})
            .code != 0) {
      return {Outcome::kFail, "build-task failed"};
    }
    const auto d = tasks::read_dataset(data);
    embeddings::EmbeddingTable table(6);
    Rng rng(4);
    for (const auto& s : testing::sequences_of(d)) {
      for (const auto& tok : s) {
        std::vector<double> v(6);
        for (double& x : v) x = rng.normal();
        table.insert(tok, v);
      }
    }
    embeddings::write_static(dir / "vectors.txt", table);
    const std::vector<std::string> common{"--dataset", data.string(), "--embeddings",
                                          (dir / "vectors.txt").string()};
    auto with = [&](std::vector<std::string> a) {
      a.insert(a.end(), common.begin(), common.end());
      return a;
    };
    if (cli(with({"train", "--encoding", "att", "--hidden-dim", "16", "--max-epochs", "15",
                  "--patience", "5", "--seed", "8", "--out", (dir / "m").string(), "--quiet"}))
                .code != 0 ||
        cli(with({"evaluate", "--model", (dir / "m" / "model.lckp").string(), "--out",
                  (dir / "eval.json").string()}))
                .code != 0) {
      return {Outcome::kFail, "train/evaluate failed"};
    }
    std::string bytes;
    for (const char* f : {"data/train.jsonl", "data/validation.jsonl", "data/test.jsonl",
                          "data/schema.json", "data/build_report.json", "m/report.json",
                          "m/model.lckp", "eval.json"}) {
      bytes += testing::read_file(dir / f) + '\0';
    }
    runs.push_back(bytes);
  }
  return {runs[0] == runs[1] ? Outcome::kPass : Outcome::kFail,
          fmt::format("build -> train -> evaluate twice, {} bytes of datasets, checkpoint and "
                      "reports {}",
                      runs[0].size(), runs[0] == runs[1] ? "identical" : "differ")};
}

// Optional: original source corpora under $LEXCOMP_SOURCE_CORPORA.
Outcome table1_sizes() {
  const char* root = std::getenv("LEXCOMP_SOURCE_CORPORA");
  if (!root || !*root) return {Outcome::kNotApplicable, "LEXCOMP_SOURCE_CORPORA not set"};
  const fs::path r(root);
  struct Expected {
    const char* task;
    std::size_t train, validation, test;
    std::vector<std::string> args;
  };
  const std::vector<Expected> table{
      {"vpc", 919, 209, 220, {"--source", (r / "vpc.tsv").string()}},
      {"lvc", 1521, 258, 383, {"--source", (r / "lvc.tsv").string()}},
      {"nc-literality", 2529, 323, 138,
       {"--source", (r / "nc_literality.tsv").string(), "--relations",
        (r / "nc_relations_tratz.tsv").string(), "--contexts", (r / "contexts.txt").string()}},
      {"nc-relations", 1274, 162, 130,
       {"--source", (r / "nc_paraphrases.tsv").string(), "--verbs", (r / "verbs.txt").string(),
        "--contexts", (r / "contexts.txt").string()}},
      {"an-attributes", 837, 108, 106,
       {"--source", (r / "an_attributes.tsv").string(), "--taxonomy",
        (r / "attribute_taxonomy.tsv").string(), "--contexts", (r / "contexts.txt").string()}},
      {"phrase-type", 3017, 372, 376, {"--source", (r / "streusle.tsv").string()}},
  };
  testing::TempDir dir;
  std::string detail;
  bool pass = true;
  std::size_t checked = 0;
  for (const auto& e : table) {
    if (!fs::exists(e.args[1])) continue;
    std::vector<std::string> args{"build-task", "--task", e.task, "--out",
                                  (dir / e.task).string(), "--quiet"};
    args.insert(args.end(), e.args.begin(), e.args.end());
    if (cli(args).code != 0) {
      pass = false;
      detail += fmt::format(" {}: build failed;", e.task);
      continue;
    }
    const auto d = tasks::read_dataset(dir / e.task);
    auto within = [](std::size_t got, std::size_t want) {
      return std::abs(static_cast<double>(got) - static_cast<double>(want)) <=
             kTable1Tolerance * static_cast<double>(want);
    };
    const bool ok = within(d.train.size(), e.train) && within(d.validation.size(), e.validation) &&
                    within(d.test.size(), e.test);
    pass = pass && ok;
    ++checked;
    detail += fmt::format(" {} {}/{}/{} vs {}/{}/{};", e.task, d.train.size(), d.validation.size(),
                          d.test.size(), e.train, e.validation, e.test);
  }
  if (checked == 0 && pass) return {Outcome::kNotApplicable, "no source corpora found under " + r.string()};
  return {pass ? Outcome::kPass : Outcome::kFail, detail};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gradient suite", gradient_suite},
      {"overfit suite", overfit_suite},
      {"decoding oracle", decoding_oracle},
      {"metric oracle", metric_oracle},
      {"builder constraints", builder_constraints},
      {"wu-palmer oracle", wu_palmer_oracle},
      {"balanced-set baseline", balanced_baseline},
      {"pipeline determinism", pipeline_determinism},
      {"table 1 split sizes (conditional)", table1_sizes},
  };
  bool all = true;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("threw: ") + e.what()};
    }
    const char* tag = o.status == Outcome::kPass ? "PASS" : o.status == Outcome::kFail ? "FAIL" : "N/A ";
    all = all && o.status != Outcome::kFail;
    std::cout << tag << "  " << name << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
