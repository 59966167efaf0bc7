#ifndef LEXCOMP_EMBEDDINGS_STATIC_TABLE_H_
#define LEXCOMP_EMBEDDINGS_STATIC_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexcomp::embeddings {

// Fixed word vectors keyed by token. Immutable after loading.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  // Returns false (and stores nothing) if the token is already present.
  bool insert(std::string token, std::vector<double> vector);

  // Exact-match lookup.
  const std::vector<double>* find(std::string_view token) const;

  // Exact match first, then the lowercased form. nullptr when out of
  // vocabulary.
  const std::vector<double>* lookup(std::string_view token) const;

  // Tokens in insertion (file) order.
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads the text vector format: an optional "<count> <dim>" header line,
// then one "token v1 ... vd" line per entry. Duplicate tokens keep their
// first occurrence. Throws FormatError (with the line number) on ragged or
// unparsable rows, and when the dimension cannot be determined.
EmbeddingTable load_static(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_dim = std::nullopt);

// Writes a header line and one line per entry with round-trip precision.
void write_static(const std::filesystem::path& path, const EmbeddingTable& table);

}  // namespace lexcomp::embeddings

#endif  // LEXCOMP_EMBEDDINGS_STATIC_TABLE_H_
