#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "../support/synthetic.h"
#include "../support/temp_dir.h"
#include "doctest.h"
#include "lexcomp/errors.h"
#include "lexcomp/model/tagging.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/serialize.h"
#include "lexcomp/tasks/text.h"

using namespace lexcomp;
using namespace lexcomp::tasks;
using Strings = std::vector<std::string>;

namespace {

std::vector<Example> all_examples(const TaskDataset& d) {
  std::vector<Example> out = d.train;
  out.insert(out.end(), d.validation.begin(), d.validation.end());
  out.insert(out.end(), d.test.begin(), d.test.end());
  return out;
}

std::set<std::string> anchors(const std::vector<Example>& xs) {
  std::set<std::string> out;
  for (const auto& e : xs) out.insert(e.anchor);
  return out;
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a) {
    if (b.count(x)) return false;
  }
  return true;
}

void check_anchor_disjointness(const TaskDataset& d) {
  const auto tr = anchors(d.train), va = anchors(d.validation), te = anchors(d.test);
  CHECK(disjoint(tr, va));
  CHECK(disjoint(tr, te));
  CHECK(disjoint(va, te));
}

// Depth by enumerating every root path; ancestors by enumerating every
// upward walk. Exponential, fine for small graphs.
struct OracleTaxonomy {
  std::map<std::string, std::vector<std::string>> parents;
  std::set<std::string> nodes;

  explicit OracleTaxonomy(const std::vector<std::pair<std::string, std::string>>& edges) {
    for (const auto& [c, p] : edges) {
      parents[c].push_back(p);
      nodes.insert(c);
      nodes.insert(p);
    }
  }
  std::size_t depth(const std::string& n) const {
    auto it = parents.find(n);
    if (it == parents.end()) return 1;
    std::size_t best = SIZE_MAX;
    for (const auto& p : it->second) best = std::min(best, depth(p) + 1);
    return best;
  }
  void walk(const std::string& n, std::set<std::string>& out) const {
    out.insert(n);
    auto it = parents.find(n);
    if (it == parents.end()) return;
    for (const auto& p : it->second) walk(p, out);
  }
  double wu_palmer(const std::string& a, const std::string& b) const {
    std::set<std::string> ua, ub;
    walk(a, ua);
    walk(b, ub);
    std::size_t lcs = 0;
    for (const auto& x : ua) {
      if (ub.count(x)) lcs = std::max(lcs, depth(x));
    }
    lcs = std::min({lcs, depth(a), depth(b)});
    return 2.0 * lcs / double(depth(a) + depth(b));
  }
};

Example anchored(const std::string& id, const std::string& anchor) {
  Example e;
  e.id = id;
  e.anchor = anchor;
  e.label = "x";
  return e;
}

}  // namespace

TEST_CASE("tokenize splits punctuation and keeps inner apostrophes and hyphens") {
  CHECK(tokenize("Jamie made a decision, finally.") ==
        Strings{"Jamie", "made", "a", "decision", ",", "finally", "."});
  CHECK(tokenize("don't stop well-known (fast)") ==
        Strings{"don't", "stop", "well-known", "(", "fast", ")"});
  CHECK(tokenize("  ").empty());
  CHECK(tokenize("'quoted' -x") == Strings{"'", "quoted", "'", "-", "x"});
}

TEST_CASE("find_phrase returns the first case-insensitive occurrence") {
  Strings s{"The", "Flea", "market", "and", "the", "flea", "market"};
  CHECK(find_phrase(s, Strings{"flea", "market"}) == std::optional<std::size_t>(1));
  CHECK_FALSE(find_phrase(s, Strings{"market", "flea"}));
  CHECK_FALSE(find_phrase(s, Strings{}));
}

TEST_CASE("wu_palmer examples") {
  auto t = Taxonomy::from_edges({{"p", "root"}, {"a", "p"}, {"b", "p"}});
  CHECK(wu_palmer(t, "a", "a") == 1.0);
  CHECK(wu_palmer(t, "a", "b") == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(t.depth("root") == 1);
  CHECK(t.depth("a") == 3);
  auto s = Taxonomy::from_edges({{"x", "root"}, {"y", "root"}});
  CHECK(wu_palmer(s, "x", "y") == 0.5);
  CHECK_THROWS_AS(wu_palmer(s, "x", "zzz"), LookupError);
}

TEST_CASE("taxonomy validation") {
  CHECK_THROWS_AS(Taxonomy::from_edges({{"a", "r1"}, {"b", "r2"}}), ConfigError);
  CHECK_THROWS_AS(Taxonomy::from_edges({{"a", "root"}, {"b", "a"}, {"c", "b"}, {"a", "c"}}),
                  ConfigError);
  CHECK_THROWS_AS(Taxonomy::from_edges({}), ConfigError);
  // Multiple parents: depth follows the shorter path.
  auto t = Taxonomy::from_edges({{"a", "root"}, {"b", "a"}, {"c", "b"}, {"c", "root"}});
  CHECK(t.depth("c") == 2);

  testing::TempDir dir;
  auto p = dir.write("t.tsv", "# comment\nchild\tparent\nparent\troot\n\n");
  CHECK(Taxonomy::load(p).depth("child") == 3);
  CHECK_THROWS_AS(Taxonomy::load(dir.write("bad.tsv", "onlyone\n")), FormatError);
}

TEST_CASE("wu_palmer equals the ancestor-enumeration oracle on random taxonomies") {
  Rng rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    auto edges = testing::random_taxonomy_edges(50, rng);
    auto t = Taxonomy::from_edges(edges);
    OracleTaxonomy oracle(edges);
    for (const auto& a : oracle.nodes) {
      CHECK(t.depth(a) == oracle.depth(a));
      for (const auto& b : oracle.nodes) {
        const double got = wu_palmer(t, a, b);
        CHECK(got == oracle.wu_palmer(a, b));
        CHECK(got > 0.0);
        CHECK(got <= 1.0);
      }
    }
  }
}

TEST_CASE("context index keeps 15-20 token sentences only") {
  Strings phrase{"flea", "market"};
  std::vector<Strings> corpus{testing::filler_sentence(phrase, 12, 0),
                              testing::filler_sentence(phrase, 17, 1),
                              testing::filler_sentence(phrase, 30, 2)};
  ContextIndex idx(corpus);
  CHECK(idx.size() == 1);
  auto c = idx.candidates(phrase);
  REQUIRE(c.size() == 1);
  CHECK(c[0].tokens.size() == 17);

  Strings twice = testing::filler_sentence(phrase, 16, 3);
  twice[10] = "Flea";
  twice[11] = "MARKET";
  ContextIndex idx2({twice, twice});
  CHECK(idx2.size() == 1);
  auto c2 = idx2.candidates(phrase);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].span == SpanRef{3, 4});
}

TEST_CASE("attach_contexts honours the limit and is seeded per item") {
  std::vector<Strings> phrases{{"a", "b"}, {"c", "d"}, {"e", "f"}};
  auto idx = testing::contexts_for(phrases, 6);
  std::vector<ContextRequest> reqs{{"i1", {"a", "b"}}, {"i2", {"c", "d"}}, {"i3", {"zz", "yy"}}};
  auto one = attach_contexts(reqs, idx, 1, 5);
  CHECK(one.placements.size() == 2);
  CHECK(one.placements.at("i1").size() == 1);
  CHECK(one.dropped == Strings{"i3"});

  auto four = attach_contexts(reqs, idx, 4, 5);
  auto& p = four.placements.at("i2");
  REQUIRE(p.size() == 4);
  std::set<Strings> distinct;
  for (const auto& x : p) {
    distinct.insert(x.tokens);
    CHECK(x.tokens.size() >= kMinContextTokens);
    CHECK(x.tokens.size() <= kMaxContextTokens);
    CHECK(x.tokens[x.span.start] == "c");
    CHECK(x.tokens[x.span.end] == "d");
  }
  CHECK(distinct.size() == 4);

  // Item order does not change an item's selection.
  std::vector<ContextRequest> reversed(reqs.rbegin(), reqs.rend());
  auto again = attach_contexts(reversed, idx, 4, 5);
  CHECK(again.placements.at("i2")[0].tokens == p[0].tokens);
  CHECK(attach_contexts(reqs, idx, 10, 5).placements.at("i1").size() == 6);
}

TEST_CASE("lexical split with exact divisibility") {
  std::vector<Example> items;
  for (int a = 0; a < 10; ++a) {
    for (int k = 0; k < 10; ++k) {
      items.push_back(anchored("e" + std::to_string(a * 10 + k), "anchor" + std::to_string(a)));
    }
  }
  auto s = lexical_split(items, 3);
  CHECK(s.train.size() == 80);
  CHECK(s.validation.size() == 10);
  CHECK(s.test.size() == 10);
  CHECK(s.anchors == std::array<std::size_t, 3>{8, 1, 1});
  CHECK_FALSE(s.skewed);
}

TEST_CASE("lexical split sends a dominant anchor to train and flags skew") {
  std::vector<Example> items;
  for (int k = 0; k < 50; ++k) items.push_back(anchored("big" + std::to_string(k), "big"));
  for (int k = 0; k < 50; ++k) {
    items.push_back(anchored("s" + std::to_string(k), "small" + std::to_string(k / 5)));
  }
  auto s = lexical_split(items, 9);
  CHECK(anchors(s.train).count("big") == 1);
  CHECK(s.train.size() == 80);

  std::vector<Example> lopsided;
  for (int k = 0; k < 90; ++k) lopsided.push_back(anchored("x" + std::to_string(k), "x"));
  lopsided.push_back(anchored("y", "y"));
  lopsided.push_back(anchored("z", "z"));
  auto t = lexical_split(lopsided, 9);
  CHECK(t.skewed);
}

TEST_CASE("lexical split requires three anchors and keeps anchors disjoint") {
  std::vector<Example> two{anchored("a", "x"), anchored("b", "y"), anchored("c", "x")};
  CHECK_THROWS_AS(lexical_split(two, 1), SplitError);
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Example> items;
    const std::size_t n = 3 + rng.below(200);
    const std::size_t k = 3 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back(anchored("e" + std::to_string(i),
                               "a" + std::to_string(i < k ? i : rng.below(k))));
    }
    auto s = lexical_split(items, rng.next());
    CHECK(s.train.size() + s.validation.size() + s.test.size() == n);
    CHECK(disjoint(anchors(s.train), anchors(s.validation)));
    CHECK(disjoint(anchors(s.train), anchors(s.test)));
    CHECK(disjoint(anchors(s.validation), anchors(s.test)));
    CHECK_FALSE(s.validation.empty());
    CHECK_FALSE(s.test.empty());
  }
}

TEST_CASE("vpc builder") {
  std::vector<VpcRow> rows{
      {split_whitespace("I feel there are others far more suited to take on the responsibility ."),
       9, 10, true, "take", 1},
      {split_whitespace("he took the book on"), 1, 4, true, "take", 2},
      {split_whitespace("she made up a story"), 1, 2, true, "", 3},
      {split_whitespace("get off"), 0, 5, false, "", 4},
  };
  for (int v = 0; v < 6; ++v) {
    rows.push_back({split_whitespace("they verb" + std::to_string(v) + " in here"), 1, 2, false, "",
                    std::size_t(10 + v)});
  }
  auto r = build_vpc(rows, 7);
  CHECK(r.report.dropped.at("particle_not_after_verb") == 1);
  CHECK(r.report.dropped.at("index_out_of_range") == 1);
  auto all = all_examples(r.dataset);
  CHECK(all.size() == 8);
  auto take = std::find_if(all.begin(), all.end(), [](auto& e) { return e.anchor == "take"; });
  REQUIRE(take != all.end());
  CHECK(take->label == "VPC");
  CHECK(take->span == SpanRef{9, 10});
  CHECK(take->tokens[9] == "take");
  CHECK(std::any_of(all.begin(), all.end(), [](auto& e) { return e.anchor == "made"; }));
  check_anchor_disjointness(r.dataset);
}

TEST_CASE("vpc split on a 100-row synthetic source is 80/10/10 within one example") {
  auto r = build_vpc(testing::synthetic_vpc(20, 5, 3), 11);
  CHECK(std::abs(int(r.dataset.train.size()) - 80) <= 1);
  CHECK(std::abs(int(r.dataset.validation.size()) - 10) <= 1);
  CHECK(std::abs(int(r.dataset.test.size()) - 10) <= 1);
  check_anchor_disjointness(r.dataset);
}

TEST_CASE("lvc builder") {
  std::vector<LvcRow> rows{{split_whitespace("Jamie made a decision to drop out of college ."), 1,
                            3, true, "make", 1},
                           {split_whitespace("too short"), 1, 4, true, "", 2}};
  for (int v = 0; v < 4; ++v) {
    rows.push_back({split_whitespace("they do" + std::to_string(v) + " a thing"), 1, 3, false, "",
                    std::size_t(3 + v)});
  }
  auto r = build_lvc(rows, 1);
  CHECK(r.dataset.schema.labels == Strings{"LVC", "not-LVC"});
  CHECK(r.report.dropped.at("span_outside_sentence") == 1);
  auto all = all_examples(r.dataset);
  auto jamie = std::find_if(all.begin(), all.end(), [](auto& e) { return e.anchor == "make"; });
  REQUIRE(jamie != all.end());
  CHECK(jamie->span->length() == 3);
  CHECK(Strings(jamie->tokens.begin() + 1, jamie->tokens.begin() + 4) ==
        Strings{"made", "a", "decision"});
  for (const auto& e : all) CHECK((e.label == "LVC" || e.label == "not-LVC"));
  check_anchor_disjointness(r.dataset);
}

TEST_CASE("nc literality thresholds and targets") {
  std::vector<ScoredConstituent> scores{
      {"flea", "market", "market", 4.5, 1}, {"flea", "market", "flea", 1.0, 2},
      {"memory", "lane", "lane", 3.0, 3},   {"memory", "lane", "memory", 4.0, 4},
      {"bad", "score", "bad", 7.0, 5},      {"gold", "mine", "silver", 4.0, 6},
      {"ivory", "tower", "tower", 2.0, 7},
  };
  std::vector<CompoundRelation> relations{{"olive", "oil", "made_of", 1},
                                          {"flea", "market", "purpose", 2},
                                          {"hot", "dog", "lexicalized", 3}};
  auto idx = testing::contexts_for({{"flea", "market"},
                                    {"memory", "lane"},
                                    {"ivory", "tower"},
                                    {"olive", "oil"},
                                    {"hot", "dog"}},
                                   3);
  auto r = build_nc_literality(scores, relations, idx, 5);
  CHECK(r.report.dropped.at("score_between_thresholds") == 1);
  CHECK(r.report.dropped.at("score_out_of_range") == 1);
  CHECK(r.report.dropped.at("constituent_not_in_compound") == 1);
  CHECK(r.report.dropped.at("lexicalized_relation") == 1);
  CHECK(r.report.dropped.at("compound_already_scored") == 1);

  std::map<std::pair<std::string, std::string>, std::string> label;
  std::size_t lit = 0, non = 0;
  for (const auto& e : all_examples(r.dataset)) {
    REQUIRE(e.extra);
    REQUIRE(e.extra->size() == 1);
    const std::string nc = e.tokens[e.span->start] + " " + e.tokens[e.span->end];
    label[{nc, e.extra->front()}] = e.label;
    CHECK(e.anchor == e.tokens[e.span->end]);
    (e.label == "literal" ? lit : non)++;
  }
  CHECK(label.at({"flea market", "market"}) == "literal");
  CHECK(label.at({"flea market", "flea"}) == "non-literal");
  CHECK(label.at({"memory lane", "memory"}) == "literal");
  CHECK(label.count({"memory lane", "lane"}) == 0);
  CHECK(label.at({"ivory tower", "tower"}) == "non-literal");
  CHECK(label.at({"olive oil", "olive"}) == "literal");
  CHECK(label.count({"hot dog", "hot"}) == 0);
  CHECK(lit <= 4 * non);
}

TEST_CASE("nc literality downsamples literals to at most 4:1") {
  std::vector<ScoredConstituent> scores;
  std::vector<std::vector<std::string>> phrases;
  for (int i = 0; i < 30; ++i) {
    const std::string w1 = "m" + std::to_string(i), w2 = "h" + std::to_string(i % 7);
    scores.push_back({w1, w2, w2, 5.0, std::size_t(i)});
    scores.push_back({w1, w2, w1, i < 3 ? 0.5 : 4.5, std::size_t(100 + i)});
    phrases.push_back({w1, w2});
  }
  auto idx = testing::contexts_for(phrases, 12);
  auto r = build_nc_literality(scores, {}, idx, 9);
  std::size_t lit = 0, non = 0;
  for (const auto& e : all_examples(r.dataset)) (e.label == "literal" ? lit : non)++;
  CHECK(non == 30);  // 3 items x 10 contexts
  CHECK(lit == 120);
  CHECK(r.report.dropped.at("literal_downsampled") == 57 * 10 - 120);
  check_anchor_disjointness(r.dataset);
}

TEST_CASE("nc relations paper example") {
  std::set<std::string> verbs{"makes", "bought", "holds", "sits", "used"};
  std::vector<ParaphraseRow> rows{
      {"body", "part", tokenize("part that makes up body"), 1},
      {"car", "part", tokenize("replacement part bought for car"), 2},
      {"car", "seat", tokenize("seat that holds car passengers"), 3},
      {"body", "part", tokenize("part of body"), 4},
      {"garden", "chair", tokenize("chair that sits in garden"), 5},
      {"office", "chair", tokenize("chair used in office"), 6},
  };
  auto idx = testing::contexts_for(
      {{"body", "part"}, {"car", "part"}, {"car", "seat"}, {"garden", "chair"}, {"office", "chair"}},
      2);
  auto r = build_nc_relations(rows, verbs, idx, 3);
  CHECK(r.report.dropped.at("paraphrase_without_verb") == 1);
  std::map<std::string, std::string> got;
  for (const auto& e : all_examples(r.dataset)) {
    const std::string nc = e.tokens[e.span->start] + " " + e.tokens[e.span->end];
    got[nc + " | " + join(*e.extra)] = e.label;
  }
  CHECK(got.at("body part | part that makes up body") == "True");
  CHECK(got.at("body part | replacement part bought for body") == "False");
  CHECK(got.at("garden chair | chair used in garden") == "False");
  CHECK(got.at("car seat | replacement seat bought for car") == "False");
}

TEST_CASE("nc relations balance, verb exclusion and shared constituents") {
  auto data = testing::synthetic_paraphrases(6, 5, 4, 10, 17);
  auto idx = testing::contexts_for(
      [&] {
        std::vector<Strings> p;
        for (const auto& [a, b] : data.compounds) p.push_back({a, b});
        return p;
      }(),
      2);
  auto r = build_nc_relations(data.rows, data.verbs, idx, 23);
  std::map<std::pair<std::string, std::string>, std::set<std::string>> own_verbs;
  std::map<std::pair<std::string, std::string>, std::set<Strings>> own_paraphrases;
  for (const auto& row : data.rows) {
    for (const auto& t : row.paraphrase) {
      if (data.verbs.count(t)) own_verbs[{row.w1, row.w2}].insert(t);
    }
    own_paraphrases[{row.w1, row.w2}].insert(row.paraphrase);
  }
  std::map<std::string, std::pair<int, int>> per_nc;
  std::size_t negatives = 0;
  for (const auto& e : all_examples(r.dataset)) {
    const std::string w1 = e.tokens[e.span->start], w2 = e.tokens[e.span->end];
    auto& [pos, neg] = per_nc[w1 + " " + w2];
    if (e.label == "True") {
      ++pos;
      CHECK(own_paraphrases[{w1, w2}].count(*e.extra) == 1);
      continue;
    }
    ++neg;
    ++negatives;
    for (const auto& t : *e.extra) CHECK(own_verbs[{w1, w2}].count(t) == 0);
    const std::string& src = r.provenance.at(e.id);
    const auto space = src.find(' ');
    const std::string s1 = src.substr(0, space), s2 = src.substr(space + 1);
    CHECK(((s1 == w1) != (s2 == w2)));
    // The negative re-derives from one of the source compound's paraphrases.
    bool derived = false;
    for (const auto& p : own_paraphrases[{s1, s2}]) {
      derived = derived || instantiate_template(make_template(p, s1, s2), w1, w2) == *e.extra;
    }
    CHECK(derived);
  }
  CHECK(negatives > 0);
  for (const auto& [nc, counts] : per_nc) {
    CHECK(counts.first == counts.second);
    CHECK(counts.first <= 5);
  }
  check_anchor_disjointness(r.dataset);
}

TEST_CASE("an attributes paper examples") {
  CHECK(attribute_paraphrase("loud", "volume", "thunder") ==
        Strings{"loud", "refers", "to", "the", "volume", "of", "thunder"});
  auto tax = Taxonomy::from_edges({{"physical_property", "attribute"},
                                   {"temperature", "physical_property"},
                                   {"volume", "physical_property"},
                                   {"brightness", "physical_property"},
                                   {"feeling", "attribute"},
                                   {"emotionality", "feeling"}});
  std::vector<AttributeRow> rows{{"hot", "water", "temperature", 1},
                                 {"hot", "argument", "emotionality", 2},
                                 {"loud", "thunder", "volume", 3},
                                 {"odd", "thing", "weirdness", 4},
                                 {"bright", "light", "brightness", 5}};
  auto idx = testing::contexts_for(
      {{"hot", "water"}, {"hot", "argument"}, {"loud", "thunder"}, {"bright", "light"}}, 2);
  auto r = build_an_attributes(rows, tax, idx, 4);
  CHECK(r.report.dropped.at("attribute_not_in_taxonomy") == 1);
  std::map<std::string, std::string> got;
  for (const auto& e : all_examples(r.dataset)) got[join(*e.extra)] = e.label;
  CHECK(got.at("hot refers to the temperature of water") == "True");
  CHECK(got.at("hot refers to the temperature of argument") == "False");
  CHECK(got.at("hot refers to the emotionality of water") == "False");
  CHECK(got.at("loud refers to the volume of thunder") == "True");
}

TEST_CASE("an attribute negatives stay below the similarity threshold") {
  auto data = testing::synthetic_attributes(12, 4, 5);
  auto tax = Taxonomy::from_edges(data.taxonomy);
  auto idx = testing::contexts_for(data.phrases, 2);
  for (bool balance : {false, true}) {
    AttributeOptions opts;
    opts.balance = balance;
    auto r = build_an_attributes(data.rows, tax, idx, 8, opts);
    std::map<std::string, std::pair<int, int>> per_anchor;
    std::size_t negatives = 0;
    for (const auto& e : all_examples(r.dataset)) {
      REQUIRE(e.extra->size() == 7);
      auto& c = per_anchor[e.anchor];
      if (e.label == "True") {
        ++c.first;
        continue;
      }
      ++c.second;
      ++negatives;
      const std::string& attribute = (*e.extra)[4];
      CHECK(wu_palmer(tax, attribute, r.provenance.at(e.id)) < 0.4);
    }
    CHECK(negatives > 0);
    for (const auto& [a, c] : per_anchor) {
      CHECK(c.second <= 3 * c.first);
      if (balance) CHECK(c.first == c.second);
    }
    check_anchor_disjointness(r.dataset);
  }
}

TEST_CASE("phrase type conversion") {
  auto tok = [](std::string t, char bio, std::string type = "", bool weak = false,
                bool disc = false) { return TaggedToken{t, bio, type, weak, disc}; };
  std::vector<TaggedSentence> s{
      {"s1", "d1", {tok("turn", 'B', "V.VPC", false, true), tok("the", 'O'), tok("TV", 'O'),
                    tok("off", 'I', "", false, true)}, 1},
      {"s2", "d2", {tok("a", 'O'), tok("hot", 'B', "", true), tok("dog", 'I'), tok("stand", 'O')}, 6},
      {"s3", "d3", {tok("the", 'O'), tok("stuff", 'I')}, 12},
      {"s4", "d4", {tok("Did", 'O'), tok("going", 'B', "AUX"), tok("to", 'I'), tok("feel", 'O')}, 15},
      {"s5", "", {tok("a", 'B', "DET"), tok("bit", 'I'), tok("more", 'I')}, 20},
  };
  auto r = build_phrase_type(s, 2);
  CHECK(r.report.dropped.at("malformed_bio") == 1);
  CHECK(r.dataset.schema.tagging);
  CHECK(r.dataset.schema.labels == Strings{"O", "I", "B-AUX", "B-COMP", "B-DET"});
  std::map<std::string, Strings> tags;
  for (const auto& e : all_examples(r.dataset)) {
    CHECK(model::is_valid_tag_sequence(e.tags));
    CHECK_FALSE(e.span);
    tags[e.anchor] = e.tags;
  }
  CHECK(tags.at("d1") == Strings{"O", "O", "O", "O"});
  CHECK(tags.at("d2") == Strings{"O", "B-COMP", "I", "O"});
  CHECK(tags.at("d4") == Strings{"O", "B-AUX", "I", "O"});
  CHECK(tags.at("s5") == Strings{"B-DET", "I", "I"});
  CHECK(tags.count("d3") == 0);
}

TEST_CASE("phrase type reader") {
  testing::TempDir dir;
  auto p = dir.write("s.tsv",
                     "# doc_id = review-1\n# sent_id = review-1-01\n"
                     "Great\tO\t_\t_\t0\nplace\tO\t_\t_\t0\n\n"
                     "# sent_id = review-1-02\nwe\tO\t_\t_\t0\ngave\tB\tV.LVC.full\tstrong\t0\n"
                     "up\tI\t_\tstrong\t0\n");
  auto s = read_phrase_type_source(p);
  REQUIRE(s.size() == 2);
  CHECK(s[0].doc_id == "review-1");
  CHECK(s[1].doc_id == "review-1");
  CHECK(s[1].sent_id == "review-1-02");
  CHECK(s[1].tokens[1].type == "V.LVC.full");
  CHECK_THROWS_AS(read_phrase_type_source(dir.write("b.tsv", "tok\tX\t_\t_\t0\n")), FormatError);
}

TEST_CASE("source readers parse and reject malformed rows") {
  testing::TempDir dir;
  auto vpc = read_vpc_source(dir.write("v.tsv", "they take on it\t1\t2\t1\ttake\n"));
  REQUIRE(vpc.size() == 1);
  CHECK(vpc[0].lemma == "take");
  CHECK(vpc[0].positive);
  CHECK_THROWS_AS(read_vpc_source(dir.write("v2.tsv", "x\ty\t2\t1\n")), FormatError);
  auto lvc = read_lvc_source(dir.write("l.tsv", "made a decision\t0\t2\tfalse\n"));
  CHECK(lvc[0].end == 2);
  auto sc = read_literality_scores(dir.write("s.tsv", "Flea market\tmarket\t4.5\n"));
  CHECK(sc[0].w1 == "flea");
  CHECK_THROWS_AS(read_literality_scores(dir.write("s2.tsv", "flea\tmarket\t4.5\n")), FormatError);
  auto pr = read_paraphrases(dir.write("p.tsv", "body part\tpart that makes up body\t0.9\n"));
  CHECK(pr[0].paraphrase.size() == 5);
  auto at = read_attributes(dir.write("a.tsv", "hot\twater\ttemperature\n"));
  CHECK(at[0].attribute == "temperature");
  auto verbs = read_verb_lexicon(dir.write("verbs.txt", "Makes\nholds\n"));
  CHECK(verbs == std::set<std::string>{"holds", "makes"});
}

TEST_CASE("builds are deterministic and round-trip through JSONL") {
  auto data = testing::synthetic_paraphrases(5, 4, 4, 10, 2);
  std::vector<Strings> phrases;
  for (const auto& [a, b] : data.compounds) phrases.push_back({a, b});
  auto idx = testing::contexts_for(phrases, 3);
  testing::TempDir dir;
  write_build(dir / "one", build_nc_relations(data.rows, data.verbs, idx, 99));
  write_build(dir / "two", build_nc_relations(data.rows, data.verbs, idx, 99));
  for (const char* f : {"train.jsonl", "validation.jsonl", "test.jsonl", "schema.json",
                        "build_report.json"}) {
    CHECK(testing::read_file(dir / "one" / f) == testing::read_file(dir / "two" / f));
  }
  auto back = read_dataset(dir / "one");
  auto direct = build_nc_relations(data.rows, data.verbs, idx, 99);
  CHECK(back.schema == direct.dataset.schema);
  CHECK(back.train == direct.dataset.train);
  CHECK(back.test == direct.dataset.test);
  auto report = Json::parse(testing::read_file(dir / "one" / "build_report.json"));
  CHECK(report["emitted"]["total"].get<std::size_t>() == all_examples(back).size());
  CHECK(report["dropped"]["reasons"]["paraphrase_without_verb"].get<int>() == 20);
}
