#ifndef LEXCOMP_TESTS_SUPPORT_FIXTURES_H_
#define LEXCOMP_TESTS_SUPPORT_FIXTURES_H_

// Small synthetic datasets and in-memory embedding sources for training
// tests. Every example uses its own tokens, so any input is separable.

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lexcomp/embeddings/embed.h"
#include "lexcomp/rng.h"
#include "lexcomp/tasks/builders.h"

namespace lexcomp::testing {

inline tasks::TaskSchema synthetic_schema(tasks::TaskId id) {
  tasks::TaskSchema s = tasks::task_schema(id);
  if (s.tagging) s.labels = tasks::tag_inventory({"AUX", "COMP", "V.VPC"});
  return s;
}

// A random valid BIO sequence over the schema's inventory.
inline std::vector<std::string> random_tags(const tasks::TaskSchema& schema, std::size_t n,
                                            Rng& rng) {
  std::vector<std::string> tags;
  bool open = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (open && u < 0.3) {
      tags.push_back("I");
    } else if (u < 0.6) {
      tags.push_back(schema.labels[2 + rng.below(schema.labels.size() - 2)]);
      open = true;
    } else {
      tags.push_back("O");
      open = false;
    }
  }
  return tags;
}

// n examples of the task's shape with alternating labels.
inline std::vector<tasks::Example> synthetic_examples(const tasks::TaskSchema& schema,
                                                      std::size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<tasks::Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    tasks::Example e;
    e.id = schema.task + "/" + std::to_string(i);
    e.task = schema.task;
    e.anchor = "anchor" + std::to_string(i);
    const std::size_t len = 4 + rng.below(3);
    for (std::size_t k = 0; k < len; ++k) {
      e.tokens.push_back("s" + std::to_string(seed % 1000) + "e" + std::to_string(i) + "w" +
                         std::to_string(k));
    }
    if (schema.tagging) {
      e.tags = random_tags(schema, len, rng);
    } else {
      const std::size_t start = rng.below(len - 1);
      e.span = model::SpanRef{start, start + 1};
      e.label = schema.labels[i % schema.labels.size()];
      if (schema.extra_arity > 0) {
        std::vector<std::string> extra;
        const std::size_t m = schema.extra_arity == 1 ? 1 : 2 + rng.below(3);
        for (std::size_t k = 0; k < m; ++k) {
          extra.push_back("x" + std::to_string(seed % 1000) + "e" + std::to_string(i) + "w" +
                          std::to_string(k));
        }
        e.extra = std::move(extra);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Train, validation and test all hold the same examples.
inline tasks::TaskDataset overfit_dataset(tasks::TaskId id, std::size_t n, uint64_t seed) {
  tasks::TaskDataset d;
  d.schema = synthetic_schema(id);
  d.train = synthetic_examples(d.schema, n, seed);
  d.validation = d.train;
  d.test = d.train;
  return d;
}

// Distinct sentences and extra inputs of a dataset, in first-seen order.
inline std::vector<std::vector<std::string>> sequences_of(const tasks::TaskDataset& d) {
  std::vector<std::vector<std::string>> out;
  std::set<std::vector<std::string>> seen;
  auto add = [&](const std::vector<std::string>& s) {
    if (!s.empty() && seen.insert(s).second) out.push_back(s);
  };
  for (const auto* split : {&d.train, &d.validation, &d.test}) {
    for (const auto& e : *split) {
      add(e.tokens);
      if (e.extra) add(*e.extra);
    }
  }
  return out;
}

inline embeddings::EmbeddingSource static_source(const tasks::TaskDataset& d, std::size_t dim,
                                                 uint64_t seed) {
  Rng rng(seed);
  auto table = std::make_shared<embeddings::EmbeddingTable>(dim);
  for (const auto& s : sequences_of(d)) {
    for (const auto& t : s) {
      std::vector<double> v(dim);
      for (double& x : v) x = rng.normal();
      table->insert(t, std::move(v));
    }
  }
  return embeddings::EmbeddingSource(std::move(table));
}

// values(tokens) must return num_layers x n x dim floats.
using LayerFill = std::function<std::vector<float>(const std::vector<std::string>&)>;

inline embeddings::EmbeddingSource contextual_source(const tasks::TaskDataset& d,
                                                     std::size_t dim, std::size_t num_layers,
                                                     const LayerFill& values) {
  auto store = std::make_shared<embeddings::ContextualStore>(static_cast<uint32_t>(dim),
                                                             static_cast<uint32_t>(num_layers));
  for (const auto& s : sequences_of(d)) store->add(s, values(s));
  return embeddings::EmbeddingSource(std::move(store));
}

inline embeddings::EmbeddingSource contextual_source(const tasks::TaskDataset& d,
                                                     std::size_t dim, std::size_t num_layers,
                                                     uint64_t seed) {
  Rng rng(seed);
  return contextual_source(d, dim, num_layers, [&](const std::vector<std::string>& s) {
    std::vector<float> v(num_layers * s.size() * dim);
    for (float& x : v) x = static_cast<float>(rng.normal());
    return v;
  });
}

}  // namespace lexcomp::testing

#endif  // LEXCOMP_TESTS_SUPPORT_FIXTURES_H_
