#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "summertime/config.hpp"

namespace summertime {

/// Streams for a command: data tables go to `out`, diagnostics to `err`.
struct Console {
  std::ostream& out;
  std::ostream& err;
};

/// Each command returns a process exit status: 0 on success, 1 when a stage
/// fails (the stage is named on `err`).

int cmd_generate(const PipelineConfig& config, std::uint64_t seed, const std::filesystem::path& out_dir,
                 Console console);

/// Window feature CSV for every bout of the corpus.
int cmd_featurize(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                  const std::filesystem::path& out_file, Console console);

/// Fits the mixture, summary classifier and regression suite on the whole
/// corpus. Writes model_gmm.json, model_mlp.json, model_regression.json and
/// summaries.csv into `out_dir`.
int cmd_fit(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
            const std::filesystem::path& out_dir, Console console);

/// Summary CSV from a stored mixture model.
int cmd_summarize(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                  const std::filesystem::path& model_file, const std::filesystem::path& out_file, Console console);

/// LOSO comparison of the configured methods; report files go to `out_dir`.
int cmd_evaluate(const PipelineConfig& config, const std::filesystem::path& corpus_dir,
                 const std::filesystem::path& out_dir, Console console);

/// Whole pipeline on config.corpus (or the synthetic corpus when unset):
/// full-corpus models plus the LOSO report, all under config.out.
int cmd_run(const PipelineConfig& config, Console console);

}  // namespace summertime
