#include "summertime/pipeline.hpp"

#include <fstream>
#include <ostream>

#include "summertime/features.hpp"
#include "summertime/summarize.hpp"

namespace summertime {

namespace {

class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "' failed: " + what) {}
};

template <typename F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

template <typename F>
int guarded(Console console, F&& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    console.err << "summertime: " << e.what() << '\n';
    return 1;
  }
}

void write_json(const nlohmann::json& j, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot write file");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(file.string() + ": write failed");
}

nlohmann::json read_json(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error(file.string() + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot create directory: " + ec.message());
}

Corpus obtain_corpus(const PipelineConfig& config, const std::filesystem::path& corpus_dir, Console console) {
  if (!corpus_dir.empty())
    return stage("load corpus", [&] { return load_corpus(corpus_dir, config.evaluation.window_length); });
  console.err << "no corpus given; generating synthetic corpus with seed " << config.synthetic_seed << '\n';
  return stage("generate corpus", [&] { return generate_synthetic(config.synthetic, config.synthetic_seed); });
}

void fit_models(const PipelineConfig& config, const Corpus& corpus, const std::filesystem::path& out_dir,
                Console console) {
  const auto& e = config.evaluation;
  stage("write output", [&] { make_dir(out_dir); });
  const auto features = stage("featurize", [&] { return featurize(corpus, e.window_length); });
  const auto mixture =
      stage("fit gmm", [&] { return fit_mixture(stack_windows(features), e.gmm_prior, e.gmm_options); });
  console.err << "mixture: k_effective " << mixture.k_effective() << " after " << mixture.iterations()
              << " iterations\n";
  const auto summaries = stage("summarize", [&] { return summarize_corpus(features, mixture); });

  std::vector<std::size_t> labels;
  std::vector<std::vector<double>> targets;
  for (const auto& b : corpus.bouts) {
    labels.push_back(b.label);
    targets.push_back(b.targets);
  }
  const auto classifier = stage("train classifier", [&] {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(summaries.size()), mixture.k_effective());
    for (std::size_t i = 0; i < summaries.size(); ++i)
      x.row(static_cast<Eigen::Index>(i)) = summaries[i].ratios.transpose();
    return train_mlp(x, labels, corpus.label_set, e.mlp);
  });

  stage("write output", [&] {
    write_json(to_json(mixture), out_dir / "model_gmm.json");
    write_json(to_json(classifier), out_dir / "model_mlp.json");
    write_summary_csv(summaries, out_dir / "summaries.csv");
  });

  if (!corpus.has_targets()) {
    console.err << "corpus has no MET targets; skipping regression\n";
    return;
  }
  const auto suite = stage("fit regressions", [&] {
    const RegressionData data{features, summaries, labels, targets};
    return fit_n_regression(data, corpus.label_set, e.regression_mode, e.aggregation);
  });
  for (const auto& w : suite.warnings) console.err << "warning: " << w << '\n';
  stage("write output", [&] { write_json(to_json(suite), out_dir / "model_regression.json"); });
}

void evaluate_into(const PipelineConfig& config, const Corpus& corpus, const std::filesystem::path& out_dir,
                   Console console) {
  const auto comparison = stage("evaluate", [&] { return compare_methods(corpus, config.methods, config.evaluation); });
  stage("write output", [&] { write_report_files(comparison, out_dir); });
  console.out << render_table(comparison);
}

}  // namespace

int cmd_generate(const PipelineConfig& config, std::uint64_t seed, const std::filesystem::path& out_dir,
                 Console console) {
  return guarded(console, [&] {
    const Corpus corpus = stage("generate corpus", [&] { return generate_synthetic(config.synthetic, seed); });
    stage("write output", [&] { save_corpus(corpus, out_dir, config.evaluation.window_length); });
    std::size_t windows = 0;
    for (const auto& b : corpus.bouts) windows += static_cast<std::size_t>(b.window_count(config.evaluation.window_length));
    console.out << "wrote " << corpus.bouts.size() << " bouts (" << windows << " windows, "
                << corpus.subjects().size() << " subjects, " << corpus.label_set.size() << " classes) to "
                << out_dir.string() << '\n';
  });
}

int cmd_featurize(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                  const std::filesystem::path& out_file, Console console) {
  return guarded(console, [&] {
    const Corpus corpus = stage("load corpus", [&] { return load_corpus(corpus_dir, config.evaluation.window_length); });
    const auto features = stage("featurize", [&] { return featurize(corpus, config.evaluation.window_length); });
    stage("write output", [&] {
      if (out_file.has_parent_path()) make_dir(out_file.parent_path());
      write_feature_csv(features, out_file);
    });
    std::size_t windows = 0;
    for (const auto& f : features) windows += static_cast<std::size_t>(f.window_count());
    console.out << "wrote " << windows << " windows from " << features.size() << " bouts to " << out_file.string()
                << '\n';
  });
}

int cmd_fit(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
            const std::filesystem::path& out_dir, Console console) {
  return guarded(console, [&] {
    const Corpus corpus = obtain_corpus(config, corpus_dir, console);
    fit_models(config, corpus, out_dir, console);
    console.out << "models written to " << out_dir.string() << '\n';
  });
}

int cmd_summarize(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                  const std::filesystem::path& model_file, const std::filesystem::path& out_file, Console console) {
  return guarded(console, [&] {
    const auto model = stage("load model", [&] { return mixture_from_json(read_json(model_file)); });
    const Corpus corpus = stage("load corpus", [&] { return load_corpus(corpus_dir, config.evaluation.window_length); });
    const auto features = stage("featurize", [&] { return featurize(corpus, config.evaluation.window_length); });
    const auto summaries = stage("summarize", [&] { return summarize_corpus(features, model); });
    stage("write output", [&] {
      if (out_file.has_parent_path()) make_dir(out_file.parent_path());
      write_summary_csv(summaries, out_file);
    });
    console.out << "wrote " << summaries.size() << " summaries of dimension " << model.k_effective() << " to "
                << out_file.string() << '\n';
  });
}

int cmd_evaluate(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                 const std::filesystem::path& out_dir, Console console) {
  return guarded(console, [&] {
    const Corpus corpus = obtain_corpus(config, corpus_dir, console);
    evaluate_into(config, corpus, out_dir, console);
  });
}

int cmd_run(const PipelineConfig& config, Console console) {
  return guarded(console, [&] {
    const Corpus corpus = obtain_corpus(config, config.corpus, console);
    fit_models(config, corpus, config.out, console);
    evaluate_into(config, corpus, config.out, console);
  });
}

}  // namespace summertime
