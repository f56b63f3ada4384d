// summertime: generate corpora, fit models, and run the LOSO comparison.
//
//   summertime generate --seed 7 --out data/
//   summertime run --config summertime.ini --out results/
//   summertime summarize --corpus data/ --model results/model_gmm.json --out summaries.csv

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "summertime/config.hpp"
#include "summertime/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> window_length;
  std::optional<std::string> methods;
  std::optional<std::string> aggregation;
  std::optional<int> parallel_folds;
  std::optional<std::string> out;
  std::optional<std::string> corpus;
  std::string model;
};

// Flags win over the config file.
summertime::PipelineConfig resolve(const Flags& f, bool seed_is_synthetic) {
  summertime::PipelineConfig c = f.config.empty() ? summertime::PipelineConfig{} : summertime::load_config(f.config);
  if (f.window_length) {
    c.evaluation.window_length = *f.window_length;
    c.synthetic.window_length = *f.window_length;
  }
  if (f.seed) {
    if (seed_is_synthetic) c.synthetic_seed = *f.seed;
    c.evaluation.gmm_options.seed = *f.seed;
    c.evaluation.mlp.seed = *f.seed;
  }
  try {
    if (f.methods) c.methods = summertime::parse_methods(*f.methods);
    if (f.aggregation) c.evaluation.aggregation = summertime::parse_aggregation(*f.aggregation);
  } catch (const std::invalid_argument& e) {
    throw summertime::ConfigError(std::string(f.methods ? "--methods" : "--aggregation") + ": " + e.what());
  }
  if (f.parallel_folds) c.evaluation.parallel_folds = *f.parallel_folds;
  if (f.out) c.out = *f.out;
  if (f.corpus) c.corpus = *f.corpus;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SummerTime: cluster-ratio summaries of variable-length time series"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", flags.seed, "seed for generation and model fitting");
  app.add_option("--window-length", flags.window_length, "samples per window");
  app.add_option("--methods", flags.methods, "comma-separated methods to compare");
  app.add_option("--aggregation", flags.aggregation, "per-window MET aggregation: sum or mean");
  app.add_option("--parallel-folds", flags.parallel_folds, "folds evaluated concurrently");
  app.add_option("--out", flags.out, "output directory (or file for featurize/summarize)");
  app.add_option("--corpus", flags.corpus, "corpus directory");

  auto* generate = app.add_subcommand("generate", "write a synthetic corpus");
  auto* featurize = app.add_subcommand("featurize", "write window features of a corpus");
  auto* fit = app.add_subcommand("fit", "fit mixture, classifier and regression models on a whole corpus");
  auto* summarize = app.add_subcommand("summarize", "summarize a corpus with a stored mixture model");
  summarize->add_option("--model", flags.model, "mixture model JSON")->required()->check(CLI::ExistingFile);
  auto* evaluate = app.add_subcommand("evaluate", "leave-one-subject-out comparison of methods");
  auto* run = app.add_subcommand("run", "fit models and evaluate in one go");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  summertime::PipelineConfig config;
  try {
    config = resolve(flags, generate->parsed() || run->parsed() || evaluate->parsed() || fit->parsed());
  } catch (const std::exception& e) {
    std::cerr << "summertime: invalid configuration: " << e.what() << '\n';
    return 2;
  }

  const summertime::Console console{std::cout, std::cerr};
  auto need = [&](const std::optional<std::string>& v, const char* flag) {
    if (!v) {
      std::cerr << "summertime: " << flag << " is required\n";
      return false;
    }
    return true;
  };

  if (generate->parsed()) {
    if (!need(flags.out, "--out")) return 2;
    return summertime::cmd_generate(config, config.synthetic_seed, *flags.out, console);
  }
  if (featurize->parsed()) {
    if (!need(flags.corpus, "--corpus") || !need(flags.out, "--out")) return 2;
    return summertime::cmd_featurize(config, *flags.corpus, *flags.out, console);
  }
  if (fit->parsed()) return summertime::cmd_fit(config, config.corpus, config.out, console);
  if (summarize->parsed()) {
    if (!need(flags.corpus, "--corpus") || !need(flags.out, "--out")) return 2;
    return summertime::cmd_summarize(config, *flags.corpus, flags.model, *flags.out, console);
  }
  if (evaluate->parsed()) return summertime::cmd_evaluate(config, config.corpus, config.out, console);
  if (run->parsed()) return summertime::cmd_run(config, console);
  return 2;
}
