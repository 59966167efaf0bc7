#ifndef LEXCOMP_EMBEDDINGS_CONTEXTUAL_STORE_H_
#define LEXCOMP_EMBEDDINGS_CONTEXTUAL_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexcomp::embeddings {

// Record identifier written to LCEB files: the tokens joined by single
// spaces. Tokens never contain whitespace.
std::string sentence_id(std::span<const std::string> tokens);

// Content hash of a token list, used as the lookup key.
uint64_t sentence_key(std::span<const std::string> tokens);

struct ContextualRecord {
  std::vector<std::string> tokens;
  // num_layers x n x dim, layer-major, token-next, dim-innermost.
  std::vector<float> values;
};

// Pre-computed multi-layer vectors for whole sentences, keyed by content.
// Immutable after loading; safe for concurrent readers.
class ContextualStore {
 public:
  ContextualStore(uint32_t dim, uint32_t num_layers);

  uint32_t dim() const { return dim_; }
  uint32_t num_layers() const { return num_layers_; }
  std::size_t size() const { return records_.size(); }

  // Returns false when a record with the same tokens already exists. Throws
  // FormatError if values.size() != num_layers * tokens.size() * dim.
  bool add(std::vector<std::string> tokens, std::vector<float> values);

  // nullptr when no record holds exactly these tokens.
  const ContextualRecord* find(std::span<const std::string> tokens) const;

  const std::vector<ContextualRecord>& records() const { return records_; }

 private:
  uint32_t dim_;
  uint32_t num_layers_;
  std::vector<ContextualRecord> records_;
  std::unordered_map<uint64_t, std::vector<std::size_t>> by_key_;
};

inline constexpr uint32_t kLcebVersion = 1;

// True when the file starts with the LCEB magic bytes.
bool is_lceb_file(const std::filesystem::path& path);

// Reads an LCEB file. Throws FormatError on bad magic or version, on a
// truncated record (naming its index), and on a record whose id token count
// disagrees with its vector count.
ContextualStore load_contextual(const std::filesystem::path& path);

void write_contextual(const std::filesystem::path& path, const ContextualStore& store);

}  // namespace lexcomp::embeddings

#endif  // LEXCOMP_EMBEDDINGS_CONTEXTUAL_STORE_H_
