#include "lexcomp/tasks/contexts.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "lexcomp/errors.h"
#include "lexcomp/rng.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::tasks {

ContextIndex::ContextIndex(const std::vector<std::vector<std::string>>& sentences) {
  std::set<std::vector<std::string>> seen;
  for (const auto& s : sentences) {
    if (s.size() < kMinContextTokens || s.size() > kMaxContextTokens) continue;
    if (!seen.insert(s).second) continue;
    const std::size_t id = sentences_.size();
    sentences_.push_back(s);
    for (const auto& tok : lowercase(s)) {
      auto& list = postings_[tok];
      if (list.empty() || list.back() != id) list.push_back(id);
    }
  }
}

ContextIndex ContextIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read context corpus " + path.string());
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokenize(line);
    if (!toks.empty()) sentences.push_back(std::move(toks));
  }
  return ContextIndex(sentences);
}

std::vector<Placement> ContextIndex::candidates(const std::vector<std::string>& phrase) const {
  std::vector<Placement> out;
  if (phrase.empty()) return out;
  // Scan the rarest token's postings.
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& tok : lowercase(phrase)) {
    auto it = postings_.find(tok);
    if (it == postings_.end()) return out;
    if (best == nullptr || it->second.size() < best->size()) best = &it->second;
  }
  for (std::size_t id : *best) {
    const auto& s = sentences_[id];
    if (auto pos = find_phrase(s, phrase)) {
      out.push_back(Placement{s, SpanRef{*pos, *pos + phrase.size() - 1}});
    }
  }
  return out;
}

AttachResult attach_contexts(const std::vector<ContextRequest>& requests,
                             const ContextIndex& contexts, std::size_t per_item_limit,
                             uint64_t seed) {
  AttachResult result;
  for (const ContextRequest& req : requests) {
    std::vector<Placement> cands = contexts.candidates(req.phrase);
    if (cands.empty() || per_item_limit == 0) {
      result.dropped.push_back(req.id);
      continue;
    }
    Rng rng(Rng::derive(seed, req.id));
    auto picked = rng.sample_indices(cands.size(), per_item_limit);
    std::sort(picked.begin(), picked.end());
    auto& out = result.placements[req.id];
    for (std::size_t i : picked) out.push_back(std::move(cands[i]));
  }
  return result;
}

}  // namespace lexcomp::tasks
