#ifndef LEXCOMP_TASKS_BUILDERS_H_
#define LEXCOMP_TASKS_BUILDERS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexcomp/tasks/contexts.h"
#include "lexcomp/tasks/report.h"
#include "lexcomp/tasks/taxonomy.h"

namespace lexcomp::tasks {

// Source rows. Sentence columns are pre-tokenized and split on whitespace;
// `line` is the 1-based source line used in rejection messages.

// VPC: sentence<TAB>verb_index<TAB>particle_index<TAB>label[<TAB>verb_lemma]
struct VpcRow {
  std::vector<std::string> tokens;
  std::size_t verb = 0;
  std::size_t particle = 0;
  bool positive = false;
  std::string lemma;
  std::size_t line = 0;
};

// LVC: sentence<TAB>start<TAB>end<TAB>label[<TAB>verb_lemma], inclusive span.
struct LvcRow {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  std::size_t end = 0;
  bool positive = false;
  std::string lemma;
  std::size_t line = 0;
};

// Literality scores: "w1 w2"<TAB>constituent<TAB>mean score.
struct ScoredConstituent {
  std::string w1, w2;
  std::string constituent;
  double score = 0.0;
  std::size_t line = 0;
};

// Compound relations: "w1 w2"<TAB>relation.
struct CompoundRelation {
  std::string w1, w2;
  std::string relation;
  std::size_t line = 0;
};

// Paraphrases: "w1 w2"<TAB>paraphrase[<TAB>score]; the score is ignored.
struct ParaphraseRow {
  std::string w1, w2;
  std::vector<std::string> paraphrase;
  std::size_t line = 0;
};

// Attributes: adjective<TAB>noun<TAB>attribute.
struct AttributeRow {
  std::string adjective, noun, attribute;
  std::size_t line = 0;
};

// Phrase-type tokens: token<TAB>bio<TAB>type<TAB>strength<TAB>discontinuous,
// bio in {O, B, I}, strength in {strong, weak, _}, discontinuous in {0, 1}.
// Sentences are separated by blank lines; "# sent_id = ..." and
// "# doc_id = ..." comments name the sentence and its document.
struct TaggedToken {
  std::string token;
  char bio = 'O';
  std::string type;
  bool weak = false;
  bool discontinuous = false;
};

struct TaggedSentence {
  std::string sent_id;
  std::string doc_id;
  std::vector<TaggedToken> tokens;
  std::size_t line = 0;
};

// Readers throw FormatError naming the line for structurally malformed rows.
std::vector<VpcRow> read_vpc_source(const std::filesystem::path& path);
std::vector<LvcRow> read_lvc_source(const std::filesystem::path& path);
std::vector<ScoredConstituent> read_literality_scores(const std::filesystem::path& path);
std::vector<CompoundRelation> read_compound_relations(const std::filesystem::path& path);
std::vector<ParaphraseRow> read_paraphrases(const std::filesystem::path& path);
std::vector<AttributeRow> read_attributes(const std::filesystem::path& path);
std::vector<TaggedSentence> read_phrase_type_source(const std::filesystem::path& path);
// One verb per line, lowercased.
std::set<std::string> read_verb_lexicon(const std::filesystem::path& path);

TaskSchema task_schema(TaskId task);

BuildResult build_vpc(const std::vector<VpcRow>& rows, uint64_t seed);
BuildResult build_lvc(const std::vector<LvcRow>& rows, uint64_t seed);

enum class SplitKey { kHead, kModifier };
SplitKey parse_split_key(std::string_view name);

struct LiteralityOptions {
  std::size_t contexts_per_item = 10;
  double max_literal_ratio = 4.0;
  SplitKey split_key = SplitKey::kHead;
};

// Score >= 4 is literal, <= 2 non-literal, anything between is dropped.
// Compounds from the relation source (except "lexicalized" ones and those
// already scored) add literal items for both constituents.
BuildResult build_nc_literality(const std::vector<ScoredConstituent>& scores,
                                const std::vector<CompoundRelation>& relations,
                                const ContextIndex& contexts, uint64_t seed,
                                const LiteralityOptions& options = {});

struct RelationsOptions {
  std::size_t max_positives = 5;
};

// BuildResult::provenance maps each negative's id to the compound "w1' w2'"
// whose paraphrase template produced it.
BuildResult build_nc_relations(const std::vector<ParaphraseRow>& rows,
                               const std::set<std::string>& verbs, const ContextIndex& contexts,
                               uint64_t seed, const RelationsOptions& options = {});

struct AttributeOptions {
  std::size_t max_negatives = 3;
  double similarity_threshold = 0.4;
  // Keep exactly one negative per positive and drop positives without one.
  bool balance = false;
};

// BuildResult::provenance maps each negative's id to its gold attribute.
BuildResult build_an_attributes(const std::vector<AttributeRow>& rows, const Taxonomy& taxonomy,
                                const ContextIndex& contexts, uint64_t seed,
                                const AttributeOptions& options = {});

// Paraphrase template "<A> refers to the <AT> of <N>", tokenized.
std::vector<std::string> attribute_paraphrase(const std::string& adjective,
                                              const std::string& attribute,
                                              const std::string& noun);

BuildResult build_phrase_type(const std::vector<TaggedSentence>& sentences, uint64_t seed);

// Instantiates a paraphrase template: "[w1]" and "[w2]" are replaced.
std::vector<std::string> instantiate_template(const std::vector<std::string>& tmpl,
                                              const std::string& w1, const std::string& w2);
// Template of a paraphrase of (w1, w2): its constituents become "[w1]"/"[w2]".
std::vector<std::string> make_template(const std::vector<std::string>& paraphrase,
                                       const std::string& w1, const std::string& w2);
// Paraphrase tokens found in the verb lexicon.
std::set<std::string> paraphrase_verbs(const std::vector<std::string>& tokens,
                                       const std::set<std::string>& verbs);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_BUILDERS_H_
