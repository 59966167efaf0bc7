#ifndef LEXCOMP_TASKS_CONTEXTS_H_
#define LEXCOMP_TASKS_CONTEXTS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexcomp/tasks/example.h"

namespace lexcomp::tasks {

inline constexpr std::size_t kMinContextTokens = 15;
inline constexpr std::size_t kMaxContextTokens = 20;

// A context sentence with the phrase located in it.
struct Placement {
  std::vector<std::string> tokens;
  SpanRef span;
};

// Corpus sentences of 15-20 tokens, indexed by lowercased token for phrase
// lookup. Longer and shorter sentences, and repeats of a sentence, are
// discarded at construction.
class ContextIndex {
 public:
  ContextIndex() = default;
  explicit ContextIndex(const std::vector<std::vector<std::string>>& sentences);
  // One sentence per line, tokenized with tokenize().
  static ContextIndex load(const std::filesystem::path& path);

  std::size_t size() const { return sentences_.size(); }
  const std::vector<std::vector<std::string>>& sentences() const { return sentences_; }

  // Every stored sentence containing the phrase contiguously (case-insensitive),
  // in corpus order, with the span of the first occurrence.
  std::vector<Placement> candidates(const std::vector<std::string>& phrase) const;

 private:
  std::vector<std::vector<std::string>> sentences_;
  std::map<std::string, std::vector<std::size_t>> postings_;
};

// An item waiting for context sentences.
struct ContextRequest {
  std::string id;
  std::vector<std::string> phrase;
};

struct AttachResult {
  // Chosen placements per request id; requests without candidates are absent.
  std::map<std::string, std::vector<Placement>> placements;
  std::vector<std::string> dropped;  // ids with no candidate sentence
};

// Up to per_item_limit distinct candidate sentences per request, drawn
// uniformly without replacement from a stream seeded by (seed, request id)
// and returned in corpus order.
AttachResult attach_contexts(const std::vector<ContextRequest>& requests,
                             const ContextIndex& contexts, std::size_t per_item_limit,
                             uint64_t seed);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_CONTEXTS_H_
