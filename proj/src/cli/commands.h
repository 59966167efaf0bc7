#ifndef LEXCOMP_SRC_CLI_COMMANDS_H_
#define LEXCOMP_SRC_CLI_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace lexcomp::cli {

// Thrown for a flag combination the parser cannot catch (exit 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  std::string task;
  std::string source;
  std::string relations;
  std::string verbs;
  std::string taxonomy;
  std::string contexts;
  std::string out;
  std::string split_key = "head";
  std::size_t max_contexts = 10;
  std::size_t max_positives = 5;
  std::size_t max_negatives = 3;
  double similarity_threshold = 0.4;
  bool balance = false;
};

struct ModelOptions {
  std::string encoding = "none";
  std::string layer = "top";
  std::size_t hidden_dim = 300;
  double dropout = 0.2;
  std::size_t max_epochs = 500;
  std::size_t patience = 20;
  std::size_t batch_size = 32;
  double lr = 1e-3;
};

struct RunOptions {
  std::string dataset;
  std::string embeddings;
  std::string model;
  std::string out;
  std::string split = "test";
  std::string variant = "all";
  std::string mode = "full";
  std::string emit_dataset;
  std::vector<std::string> layers;
  std::vector<std::string> encodings;
  std::size_t jobs = 1;
  ModelOptions model_options;
};

int run_build(const BuildOptions& o, uint64_t seed, std::ostream& out);
int run_baseline(const RunOptions& o, std::ostream& out);
int run_train(const RunOptions& o, uint64_t seed, std::ostream& out);
int run_evaluate(const RunOptions& o, std::ostream& out);
int run_grid_command(const RunOptions& o, uint64_t seed, std::ostream& out);
int run_ablate(const RunOptions& o, uint64_t seed, std::ostream& out);
int run_inspect(const RunOptions& o, std::ostream& out);

}  // namespace lexcomp::cli

#endif  // LEXCOMP_SRC_CLI_COMMANDS_H_
