#include "lexcomp/tasks/taxonomy.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "lexcomp/errors.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {

Taxonomy Taxonomy::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  Taxonomy t;
  auto intern = [&t](const std::string& name) {
    auto [it, inserted] = t.index_.emplace(name, t.names_.size());
    if (inserted) {
      t.names_.push_back(name);
      t.parents_.emplace_back();
    }
    return it->second;
  };
  for (const auto& [child, parent] : edges) {
    if (child == parent) throw ConfigError("taxonomy node '" + child + "' is its own parent");
    const std::size_t c = intern(child);
    const std::size_t p = intern(parent);
    auto& ps = t.parents_[c];
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  }
  const std::size_t n = t.names_.size();
  if (n == 0) throw ConfigError("taxonomy is empty");

  std::vector<std::size_t> roots;
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (t.parents_[c].empty()) roots.push_back(c);
    for (std::size_t p : t.parents_[c]) children[p].push_back(c);
  }
  if (roots.size() != 1) {
    std::string names;
    for (std::size_t i = 0; i < std::min<std::size_t>(roots.size(), 5); ++i) {
      names += (i ? ", " : "") + t.names_[roots[i]];
    }
    throw ConfigError("taxonomy must have exactly one root, found " +
                      std::to_string(roots.size()) + (names.empty() ? "" : " (" + names + ")"));
  }
  t.root_ = roots[0];

  // Kahn's algorithm from the root downwards; anything left over sits on a
  // cycle.
  std::vector<std::size_t> pending(n);
  for (std::size_t c = 0; c < n; ++c) pending[c] = t.parents_[c].size();
  std::deque<std::size_t> ready{t.root_};
  std::size_t processed = 0;
  while (!ready.empty()) {
    const std::size_t p = ready.front();
    ready.pop_front();
    ++processed;
    for (std::size_t c : children[p]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (processed != n) {
    for (std::size_t c = 0; c < n; ++c) {
      if (pending[c] > 0) throw ConfigError("taxonomy has a cycle through '" + t.names_[c] + "'");
    }
  }

  // Breadth-first depths give the shortest path from the root.
  t.depth_.assign(n, 0);
  t.depth_[t.root_] = 1;
  std::deque<std::size_t> queue{t.root_};
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    for (std::size_t c : children[p]) {
      if (t.depth_[c] == 0) {
        t.depth_[c] = t.depth_[p] + 1;
        queue.push_back(c);
      }
    }
  }
  return t;
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read taxonomy " + path.string());
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected child<TAB>parent");
    }
    edges.emplace_back(cols[0], cols[1]);
  }
  return from_edges(edges);
}

std::size_t Taxonomy::id(const std::string& node) const {
  auto it = index_.find(node);
  if (it == index_.end()) throw LookupError("'" + node + "' is not in the taxonomy");
  return it->second;
}

std::size_t Taxonomy::depth(const std::string& node) const { return depth_[id(node)]; }

std::vector<std::string> Taxonomy::parents(const std::string& node) const {
  std::vector<std::string> out;
  for (std::size_t p : parents_[id(node)]) out.push_back(names_[p]);
  return out;
}

std::vector<std::string> Taxonomy::ancestors(const std::string& node) const {
  std::set<std::size_t> seen{id(node)};
  std::vector<std::size_t> stack{id(node)};
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t p : parents_[c]) {
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  std::vector<std::string> out;
  for (std::size_t i : seen) out.push_back(names_[i]);
  return out;
}

double wu_palmer(const Taxonomy& taxonomy, const std::string& a, const std::string& b) {
  const auto up_a = taxonomy.ancestors(a);
  const std::set<std::string> up_b = [&] {
    auto v = taxonomy.ancestors(b);
    return std::set<std::string>(v.begin(), v.end());
  }();
  std::size_t lcs_depth = 0;
  for (const auto& x : up_a) {
    if (up_b.count(x)) lcs_depth = std::max(lcs_depth, taxonomy.depth(x));
  }
  const std::size_t da = taxonomy.depth(a), db = taxonomy.depth(b);
  // With several parents a common ancestor can sit on a longer path than the
  // shortest one to a or b; cap it so the score stays in (0, 1].
  lcs_depth = std::min({lcs_depth, da, db});
  return 2.0 * static_cast<double>(lcs_depth) / static_cast<double>(da + db);
}

}  // namespace lexcomp::tasks
