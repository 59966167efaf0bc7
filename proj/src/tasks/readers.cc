#include <fstream>

#include "lexcomp/errors.h"
#include "lexcomp/tasks/builders.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {
namespace {

// Calls fn(columns, line_no) for every non-blank, non-comment line.
template <typename Fn>
void for_each_row(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    fn(split_tabs(line), line_no);
  }
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t line,
                          const std::string& what) {
  throw FormatError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::size_t index_column(const std::filesystem::path& path, std::size_t line,
                         const std::string& text, const char* name) {
  auto v = parse_index(text);
  if (!v) bad_row(path, line, std::string("malformed ") + name + " '" + text + "'");
  return *v;
}

bool label_column(const std::filesystem::path& path, std::size_t line, const std::string& text) {
  auto v = parse_bool(text);
  if (!v) bad_row(path, line, "malformed label '" + text + "'");
  return *v;
}

std::pair<std::string, std::string> compound_column(const std::filesystem::path& path,
                                                    std::size_t line, const std::string& text) {
  auto words = split_whitespace(text);
  if (words.size() != 2) bad_row(path, line, "expected a two-word compound, got '" + text + "'");
  return {lowercase(words[0]), lowercase(words[1])};
}

}  // namespace

std::vector<VpcRow> read_vpc_source(const std::filesystem::path& path) {
  std::vector<VpcRow> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() < 4 || c.size() > 5) {
      bad_row(path, line, "expected sentence, verb index, particle index, label[, lemma]");
    }
    VpcRow r;
    r.tokens = split_whitespace(c[0]);
    r.verb = index_column(path, line, c[1], "verb index");
    r.particle = index_column(path, line, c[2], "particle index");
    r.positive = label_column(path, line, c[3]);
    if (c.size() == 5) r.lemma = lowercase(c[4]);
    r.line = line;
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<LvcRow> read_lvc_source(const std::filesystem::path& path) {
  std::vector<LvcRow> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() < 4 || c.size() > 5) {
      bad_row(path, line, "expected sentence, span start, span end, label[, lemma]");
    }
    LvcRow r;
    r.tokens = split_whitespace(c[0]);
    r.start = index_column(path, line, c[1], "span start");
    r.end = index_column(path, line, c[2], "span end");
    r.positive = label_column(path, line, c[3]);
    if (c.size() == 5) r.lemma = lowercase(c[4]);
    r.line = line;
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<ScoredConstituent> read_literality_scores(const std::filesystem::path& path) {
  std::vector<ScoredConstituent> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() != 3) bad_row(path, line, "expected compound, constituent, score");
    ScoredConstituent r;
    std::tie(r.w1, r.w2) = compound_column(path, line, c[0]);
    r.constituent = lowercase(c[1]);
    auto score = parse_double(c[2]);
    if (!score) bad_row(path, line, "malformed score '" + c[2] + "'");
    r.score = *score;
    r.line = line;
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<CompoundRelation> read_compound_relations(const std::filesystem::path& path) {
  std::vector<CompoundRelation> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() != 2) bad_row(path, line, "expected compound, relation");
    CompoundRelation r;
    std::tie(r.w1, r.w2) = compound_column(path, line, c[0]);
    r.relation = lowercase(c[1]);
    r.line = line;
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<ParaphraseRow> read_paraphrases(const std::filesystem::path& path) {
  std::vector<ParaphraseRow> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() < 2 || c.size() > 3) bad_row(path, line, "expected compound, paraphrase[, score]");
    ParaphraseRow r;
    std::tie(r.w1, r.w2) = compound_column(path, line, c[0]);
    r.paraphrase = lowercase(tokenize(c[1]));
    if (r.paraphrase.empty()) bad_row(path, line, "empty paraphrase");
    r.line = line;
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<AttributeRow> read_attributes(const std::filesystem::path& path) {
  std::vector<AttributeRow> rows;
  for_each_row(path, [&](const std::vector<std::string>& c, std::size_t line) {
    if (c.size() != 3 || c[0].empty() || c[1].empty() || c[2].empty()) {
      bad_row(path, line, "expected adjective, noun, attribute");
    }
    rows.push_back(AttributeRow{lowercase(c[0]), lowercase(c[1]), lowercase(c[2]), line});
  });
  return rows;
}

std::vector<TaggedSentence> read_phrase_type_source(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  std::vector<TaggedSentence> out;
  TaggedSentence cur;
  std::string doc;
  auto flush = [&] {
    if (!cur.tokens.empty()) {
      if (cur.doc_id.empty()) cur.doc_id = doc;
      out.push_back(std::move(cur));
    }
    cur = TaggedSentence();
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      std::string value = line.substr(eq + 1);
      key = join(split_whitespace(key));
      value = join(split_whitespace(value));
      if (key == "sent_id") cur.sent_id = value;
      if (key == "doc_id") doc = cur.doc_id = value;
      continue;
    }
    auto c = split_tabs(line);
    if (c.size() != 5) bad_row(path, line_no, "expected token, bio, type, strength, discontinuous");
    TaggedToken t;
    t.token = c[0];
    if (c[1] != "O" && c[1] != "B" && c[1] != "I") bad_row(path, line_no, "bio must be O, B or I");
    t.bio = c[1][0];
    t.type = c[2] == "_" ? "" : c[2];
    if (c[3] != "strong" && c[3] != "weak" && c[3] != "_") {
      bad_row(path, line_no, "strength must be strong, weak or _");
    }
    t.weak = c[3] == "weak";
    auto disc = parse_bool(c[4]);
    if (!disc) bad_row(path, line_no, "discontinuous flag must be 0 or 1");
    t.discontinuous = *disc;
    if (cur.tokens.empty()) cur.line = line_no;
    cur.tokens.push_back(std::move(t));
  }
  flush();
  return out;
}

std::set<std::string> read_verb_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read verb lexicon " + path.string());
  std::set<std::string> verbs;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& w : split_whitespace(line)) verbs.insert(lowercase(w));
  }
  return verbs;
}

}  // namespace lexcomp::tasks
