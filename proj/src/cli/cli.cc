#include "lexcomp/cli/cli.h"

#include <cstdlib>
#include <fstream>
#include <memory>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "commands.h"
#include "lexcomp/errors.h"
#include "lexcomp/tasks/text.h"

namespace lexcomp::cli {

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw FormatError(path.string() + ":" + std::to_string(n) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::filesystem::path resolve_input(const std::filesystem::path& path) {
  const char* root = std::getenv("LEXCOMP_DATA_ROOT");
  if (path.empty() || path.is_absolute() || !root || !*root) return path;
  return std::filesystem::path(root) / path;
}

namespace {

struct Common {
  uint64_t seed = 0;
  bool quiet = false;
  std::string config;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for all randomness");
  cmd->add_flag("--quiet", c.quiet, "Only log warnings and errors");
  cmd->add_option("--config", c.config, "key = value file; flags on the command line win");
}

void add_model_options(CLI::App* cmd, ModelOptions& m, bool single_setting) {
  if (single_setting) {
    cmd->add_option("--encoding", m.encoding, "none, bilm or att")->capture_default_str();
    cmd->add_option("--layer", m.layer, "top or all")->capture_default_str();
  }
  cmd->add_option("--hidden-dim", m.hidden_dim)->capture_default_str();
  cmd->add_option("--dropout", m.dropout)->capture_default_str();
  cmd->add_option("--max-epochs", m.max_epochs)->capture_default_str();
  cmd->add_option("--patience", m.patience)->capture_default_str();
  cmd->add_option("--batch-size", m.batch_size)->capture_default_str();
  cmd->add_option("--lr", m.lr, "Adam learning rate")->capture_default_str();
}

// Inserts config-file values ahead of the command-line flags of the chosen
// subcommand so that the later command-line values win.
std::vector<std::string> expand_config(const CLI::App& app, const std::vector<std::string>& args) {
  if (args.empty()) return args;
  const CLI::App* cmd = nullptr;
  try {
    cmd = app.get_subcommand(args[0]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> out{args[0]};
  for (const auto& [key, value] : read_config_file(resolve_input(path))) {
    const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt || key == "config") throw UsageError("unknown config key '" + key + "' in " + path);
    if (opt->get_expected_min() == 0) {
      if (tasks::parse_bool(value)) out.push_back("--" + key);
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Probing lexical composition in frozen word representations", "lexcomp");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Common common;
  BuildOptions build;
  RunOptions run;

  auto* b = app.add_subcommand("build-task", "Build a task dataset from its source files");
  add_common(b, common);
  b->add_option("--task", build.task,
                "vpc, lvc, nc-literality, nc-relations, an-attributes or phrase-type")
      ->required();
  b->add_option("--source", build.source, "Task source file")->required();
  b->add_option("--relations", build.relations, "Compound relations (nc-literality)");
  b->add_option("--verbs", build.verbs, "Verb lexicon (nc-relations)");
  b->add_option("--taxonomy", build.taxonomy, "child<TAB>parent attribute taxonomy");
  b->add_option("--contexts", build.contexts, "Sentence corpus, one sentence per line");
  b->add_option("--out", build.out, "Output directory")->required();
  b->add_option("--split-key", build.split_key, "head or modifier (nc-literality)")
      ->capture_default_str();
  b->add_option("--max-contexts", build.max_contexts, "Context sentences per item")
      ->capture_default_str();
  b->add_option("--max-positives", build.max_positives, "Positives per compound (nc-relations)")
      ->capture_default_str();
  b->add_option("--max-negatives", build.max_negatives, "Negatives per positive (an-attributes)")
      ->capture_default_str();
  b->add_option("--similarity-threshold", build.similarity_threshold)->capture_default_str();
  b->add_flag("--balance", build.balance, "One negative per positive (an-attributes)");

  auto* base = app.add_subcommand("baseline", "Majority baselines");
  add_common(base, common);
  base->add_option("--dataset", run.dataset)->required();
  base->add_option("--variant", run.variant, "all, first or last")->capture_default_str();
  base->add_option("--out", run.out, "Report JSON path");

  auto* tr = app.add_subcommand("train", "Train a probe and evaluate it on the test split");
  add_common(tr, common);
  tr->add_option("--dataset", run.dataset)->required();
  tr->add_option("--embeddings", run.embeddings, "Text vectors or LCEB file")->required();
  tr->add_option("--out", run.out, "Output directory (model.lckp, report.json)")->required();
  add_model_options(tr, run.model_options, true);

  auto* ev = app.add_subcommand("evaluate", "Evaluate a saved probe");
  add_common(ev, common);
  ev->add_option("--dataset", run.dataset)->required();
  ev->add_option("--embeddings", run.embeddings)->required();
  ev->add_option("--model", run.model)->required();
  ev->add_option("--split", run.split, "train, validation or test")->capture_default_str();
  ev->add_option("--out", run.out, "Report JSON path");

  auto* gr = app.add_subcommand("grid", "Train every layer x encoding setting");
  add_common(gr, common);
  gr->add_option("--dataset", run.dataset)->required();
  gr->add_option("--embeddings", run.embeddings)->required();
  gr->add_option("--out", run.out, "Output directory (grid.json, grid.txt)");
  gr->add_option("--jobs", run.jobs, "Settings trained concurrently")->capture_default_str();
  gr->add_option("--layers", run.layers, "Subset of top, all")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  gr->add_option("--encodings", run.encodings, "Subset of none, bilm, att")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  add_model_options(gr, run.model_options, false);

  auto* ab = app.add_subcommand("ablate", "Train with the phrase and/or context removed");
  add_common(ab, common);
  ab->add_option("--dataset", run.dataset)->required();
  ab->add_option("--mode", run.mode, "full, minus-phrase, minus-context or minus-both")
      ->capture_default_str();
  ab->add_option("--embeddings", run.embeddings);
  ab->add_option("--out", run.out, "Report JSON path");
  ab->add_option("--emit-dataset", run.emit_dataset,
                 "Write the ablated dataset here instead of training");
  add_model_options(ab, run.model_options, true);

  auto* in = app.add_subcommand("inspect-layers", "Print the learned layer weights of a probe");
  add_common(in, common);
  in->add_option("--model", run.model)->required();
  in->add_option("--out", run.out, "JSON path");

  auto previous = spdlog::default_logger();
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("lexcomp", sink);
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  struct Restore {
    std::shared_ptr<spdlog::logger> logger;
    ~Restore() { spdlog::set_default_logger(logger); }
  } restore{previous};

  try {
    std::vector<std::string> expanded = expand_config(app, args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  logger->set_level(common.quiet ? spdlog::level::warn : spdlog::level::info);

  try {
    if (b->parsed()) return run_build(build, common.seed, out);
    if (base->parsed()) return run_baseline(run, out);
    if (tr->parsed()) return run_train(run, common.seed, out);
    if (ev->parsed()) return run_evaluate(run, out);
    if (gr->parsed()) return run_grid_command(run, common.seed, out);
    if (ab->parsed()) return run_ablate(run, common.seed, out);
    if (in->parsed()) return run_inspect(run, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace lexcomp::cli
