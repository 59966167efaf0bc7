#ifndef LEXCOMP_TASKS_TAXONOMY_H_
#define LEXCOMP_TASKS_TAXONOMY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lexcomp::tasks {

// Hypernym graph: child -> parent edges forming a DAG with a single root.
// Depth is the shortest hypernym path length from the root, root depth 1.
class Taxonomy {
 public:
  // Throws ConfigError when there is not exactly one root or the edges form
  // a cycle.
  static Taxonomy from_edges(const std::vector<std::pair<std::string, std::string>>& edges);
  // Lines "child<TAB>parent". Blank lines and lines starting with '#' are
  // skipped.
  static Taxonomy load(const std::filesystem::path& path);

  bool contains(const std::string& node) const { return index_.count(node) > 0; }
  const std::string& root() const { return names_[root_]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& nodes() const { return names_; }

  // Throws LookupError for unknown nodes.
  std::size_t depth(const std::string& node) const;
  std::vector<std::string> parents(const std::string& node) const;
  // The node and all its hypernyms.
  std::vector<std::string> ancestors(const std::string& node) const;

 private:
  std::size_t id(const std::string& node) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::size_t> depth_;
  std::size_t root_ = 0;
};

// 2 * depth(lcs) / (depth(a) + depth(b)), lcs the deepest common ancestor.
double wu_palmer(const Taxonomy& taxonomy, const std::string& a, const std::string& b);

}  // namespace lexcomp::tasks

#endif  // LEXCOMP_TASKS_TAXONOMY_H_
